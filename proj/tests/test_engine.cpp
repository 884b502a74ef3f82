#include <thread>
#include <vector>

#include "doctest.h"
#include "wilson/catalog.hpp"
#include "wilson/engine.hpp"

using namespace wilson;

namespace {

std::array<Letter, kDegree> trivial() {
  std::array<Letter, kDegree> s;
  s.fill(Letter::identity());
  return s;
}

}  // namespace

TEST_CASE("letters pack permutations and atoms apart") {
  CHECK(Letter::identity().is_perm());
  CHECK(Letter::identity().is_identity());
  CHECK(Letter::perm(Perm()).is_identity());
  CHECK(Letter::perm(fano::x()).as_perm() == fano::x());
  const Letter a = Letter::atom(5, true);
  CHECK(a.is_atom());
  CHECK(a.atom_id() == 5);
  CHECK(a.inverted());
  CHECK(Letter::self().is_self());
  CHECK_FALSE(Letter::self().is_atom());
}

TEST_CASE("decompose follows the section product rule") {
  Engine e;
  Catalog c(e);
  const Element x = e.element(fano::x());
  const NodeForm fx = e.decompose(x);
  CHECK(fx.root == fano::x());
  for (const Element &s : fx.sections) CHECK(e.is_identity(s));

  const Element abar = c.abar(fano::x()), bbar = c.abar(fano::y());
  const NodeForm f = e.decompose(e.multiply(abar, bbar));
  CHECK(f.root.is_identity());
  CHECK(e.equals(f.sections[0], e.multiply(abar, bbar)));
  CHECK(e.equals(f.sections[1], e.element(fano::x() * fano::y())));
  for (int p = 2; p < kDegree; ++p) CHECK(e.is_identity(f.sections[p]));

  const auto primed = c.prime_triple({e.element(fano::x()), e.element(fano::y()), e.element(fano::z())},
                                     {"x'", "y'", "z'"});
  const NodeForm g = e.decompose(e.multiply(primed[0], primed[1]));
  CHECK(g.root == fano::x() * fano::y());
  CHECK(e.equals(g.sections[3], e.element(fano::x())));
  CHECK(e.equals(g.sections[4], e.element(fano::y())));
  for (int p : {0, 1, 2, 5, 6}) CHECK(e.is_identity(g.sections[p]));
}

TEST_CASE("recompose inverts decompose") {
  Engine e;
  Catalog c(e);
  const Element g = e.multiply(c.S(1).symbols[0].element, c.S(1).symbols[1].element);
  const Element h = e.recompose(e.decompose(g));
  CHECK(e.equals(g, h));
}

TEST_CASE("arithmetic") {
  Engine e;
  Catalog c(e);
  const Element xt = c.tilde().symbols[0].element;
  const Element g = e.multiply(c.S(2).symbols[0].element, c.S(2).symbols[2].element);
  CHECK(e.is_identity(e.multiply(g, e.inverse(g))));
  CHECK(e.is_identity(e.power(xt, 2)));
  CHECK(e.power(g, 0).empty());
  CHECK(e.equals(e.power(g, -1), e.inverse(g)));
  CHECK(e.equals(e.commutator(g, xt),
                 e.multiply(e.multiply(e.inverse(g), e.inverse(xt)), e.multiply(g, xt))));
  CHECK(e.equals(e.conjugate(g, xt), e.multiply(e.multiply(e.inverse(xt), g), xt)));
}

TEST_CASE("action on strings") {
  Engine e;
  Catalog c(e);
  const Element xt = c.tilde().symbols[0].element;
  CHECK(e.act(xt, "15") == "55");
  CHECK(e.act(xt, "44") == "44");
  CHECK(e.act(xt, "") == "");
  CHECK(e.act(c.base().symbols[0].element, "1") == "5");
  const Perm a = fano::z();
  const Element abar = c.abar(a);
  CHECK(e.act(abar, "24") == std::string("2") + static_cast<char>('0' + a(Point(4)).label()));
  CHECK(e.act(c.abar(fano::y()), "21") == "21");
  CHECK_THROWS(e.act(abar, "18"));
}

TEST_CASE("action is a right action") {
  Engine e;
  Catalog c(e);
  const auto &s = c.S(2);
  const Element g = s.symbols[0].element, h = e.multiply(s.symbols[1].element, s.symbols[2].element);
  for (const std::string str : {"1234567", "4412", "2222", "7531"})
    CHECK(e.act(e.multiply(g, h), str) == e.act(h, e.act(g, str)));
}

TEST_CASE("identity tests") {
  Engine e;
  Catalog c(e);
  const Element x = e.element(fano::x());
  CHECK(e.is_identity(e.multiply(x, x)));
  CHECK_FALSE(e.is_identity(c.abar(fano::x())));
  CHECK(e.is_identity(e.power(e.multiply(x, c.abar(fano::y())), 4)));
  CHECK(e.is_identity(e.identity()));
}

TEST_CASE("equality") {
  Engine e;
  Catalog c(e);
  const Perm a = Perm::from_cycles("(1 2 4 5 6 7 3)");
  const Element abar = c.abar(a);
  CHECK(e.equals(e.multiply(abar, abar), c.abar(a * a)));
  const auto primed = c.prime_triple({e.element(fano::x()), e.element(fano::y()), e.element(fano::z())},
                                     {"x'", "y'", "z'"});
  CHECK_FALSE(e.equals(primed[0], e.element(fano::x())));
}

TEST_CASE("abar is a homomorphism on A") {
  Engine e;
  Catalog c(e);
  const auto &els = fano::psl32().elements();
  for (std::size_t i = 0; i < els.size(); i += 13)
    for (std::size_t j = 0; j < els.size(); j += 17)
      CHECK(e.equals(e.multiply(c.abar(els[i]), c.abar(els[j])), c.abar(els[i] * els[j])));
}

TEST_CASE("signatures") {
  Engine e;
  Catalog c(e);
  const Element x = e.element(fano::x()), y = e.element(fano::y());
  for (int d = 0; d <= 4; ++d) CHECK(e.signature(e.identity(), d) == e.signature(e.multiply(x, x), d));
  CHECK(e.signature(x, 1) != e.signature(y, 1));
  const Element abar = c.abar(fano::x());
  CHECK(e.signature(abar, 1) == e.signature(e.identity(), 1));
  CHECK(e.signature(abar, 2) != e.signature(e.identity(), 2));
}

TEST_CASE("order_bounded") {
  Engine e;
  Catalog c(e);
  const Element x = e.element(fano::x());
  CHECK(e.order_bounded(x, 4) == 2);
  CHECK(e.order_bounded(e.identity(), 1) == 1);
  const auto k = e.order_bounded(e.multiply(x, c.abar(fano::y())), 8);
  REQUIRE(k.has_value());
  CHECK(4 % *k == 0);
  CHECK_FALSE(e.order_bounded(e.multiply(c.S(1).symbols[0].element, c.S(1).symbols[1].element), 3)
                  .has_value());
}

TEST_CASE("portraits") {
  Engine e;
  Catalog c(e);
  const Portrait id = e.portrait(e.identity(), 2);
  CHECK(id.root.is_identity());
  for (const Portrait &ch : id.children) {
    CHECK(ch.root.is_identity());
    for (const Portrait &g : ch.children) CHECK(g.root.is_identity());
  }
  const Perm a = fano::z();
  const Portrait pa = e.portrait(c.abar(a), 2);
  CHECK(pa.root.is_identity());
  CHECK(pa.children[1].root == a);
  CHECK(pa.children[0].root.is_identity());
  CHECK(pa.children[0].children[1].root == a);
  const Portrait px = e.portrait(e.element(fano::x()), 3);
  CHECK(px.root == fano::x());
  CHECK(portrait_to_text(px) == "ε (1 5)(3 7)\n");
  CHECK(portrait_to_json(pa) == portrait_to_json(e.portrait(c.abar(a), 2)));
}

TEST_CASE("atom registry rejects bad definitions") {
  Engine e;
  auto secs = trivial();
  secs[0] = Letter::atom(3);
  CHECK_THROWS_AS(e.define_atom("fwd", fano::x(), secs, false), std::invalid_argument);
  auto abar_secs = trivial();
  abar_secs[0] = Letter::self();
  abar_secs[1] = Letter::perm(Perm::from_cycles("(1 2 4 5 6 7 3)"));
  CHECK_THROWS_AS(e.define_atom("notinv", Perm(), abar_secs, true), std::invalid_argument);
  CHECK(e.atom_count() == 0);
  const AtomId ok = e.define_atom("xbar", Perm(), [] {
    auto s = trivial();
    s[0] = Letter::self();
    s[1] = Letter::perm(fano::x());
    return s;
  }(), true);
  CHECK(e.is_involution(ok));
  CHECK(e.to_string(e.inverse(e.atom(ok))) == "xbar");
}

TEST_CASE("state budget raises ResourceError") {
  Engine e(1);
  Catalog c(e);
  int exhausted = 0;
  for (const CatalogClaim &claim : c.identity_catalog()) {
    const ClaimVerdict v = c.check(claim);
    if (v.detail.find("state budget of 1 ") != std::string::npos) {
      ++exhausted;
      CHECK_FALSE(v.pass);
    }
  }
  CHECK(exhausted > 0);
  const Element u = c.identity_catalog()[0].lhs;
  CHECK(e.is_identity(u));
  Element w = e.identity();
  for (int i = 0; i < 16; ++i) w = e.multiply(w, c.S(1).symbols[i % 2 == 0 ? 1 : 0].element);
  CHECK_THROWS_AS(e.is_identity(w), ResourceError);
  e.set_state_budget(Engine::kDefaultStateBudget);
  for (const CatalogClaim &claim : c.identity_catalog()) CHECK(c.check(claim).pass);
}

TEST_CASE("identity tests are safe across threads") {
  Engine e;
  Catalog c(e);
  const auto &s = c.S(3);
  std::vector<Element> words;
  Element w = e.identity();
  for (int i = 0; i < 40; ++i) {
    w = e.multiply(w, s.symbols[(i * 7) % 3].element);
    words.push_back(w);
  }
  std::vector<int> serial;
  for (const Element &g : words) serial.push_back(e.is_identity(g));
  e.clear_cache();
  std::vector<int> parallel(words.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < words.size(); i += 4) parallel[i] = e.is_identity(words[i]);
    });
  for (auto &th : pool) th.join();
  CHECK(serial == parallel);
}
