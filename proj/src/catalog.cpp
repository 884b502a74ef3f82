#include "wilson/catalog.hpp"

#include <sstream>

namespace wilson {

namespace {

std::array<Letter, kDegree> trivial_sections() {
  std::array<Letter, kDegree> s;
  s.fill(Letter::identity());
  return s;
}

Letter single_letter(const Element &e) {
  if (e.empty()) return Letter::identity();
  return e.letters().front();
}

std::string bar_name(const Perm &a) {
  if (a == fano::x()) return "xbar";
  if (a == fano::y()) return "ybar";
  if (a == fano::z()) return "zbar";
  return "bar" + a.to_cycles();
}

}  // namespace

int GeneratingSet::find(const std::string &symbol) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].symbol == symbol) return static_cast<int>(i);
  return -1;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "equal";
    case Relation::NotEqual: return "not-equal";
    case Relation::IsIdentity: return "is-identity";
    case Relation::NotIdentity: return "not-identity";
  }
  return "unknown";
}

Catalog::Catalog(Engine &engine) : engine_(engine) {}

Element Catalog::abar(const Perm &a) {
  if (a.is_identity()) return engine_.identity();
  if (auto it = abar_.find(a); it != abar_.end()) return it->second;
  auto secs = trivial_sections();
  secs[0] = Letter::self();
  secs[1] = Letter::perm(a);
  bool involution = (a * a).is_identity();
  AtomId id = engine_.define_atom(bar_name(a), Perm(), secs, involution);
  Element e = engine_.atom(id);
  abar_.emplace(a, e);
  return e;
}

std::array<Element, 3> Catalog::prime_triple(const std::array<Element, 3> &t,
                                             const std::array<std::string, 3> &names) {
  for (const Element &e : t)
    if (!engine_.is_identity(engine_.multiply(e, e)))
      throw std::invalid_argument("prime_triple needs involutions, got " + engine_.to_string(e));
  static constexpr std::array<int, 3> kSlot{3, 0, 1};  // points 4, 1, 2
  const std::array<Perm, 3> roots{fano::x(), fano::y(), fano::z()};
  std::array<Element, 3> out;
  for (int i = 0; i < 3; ++i) {
    auto secs = trivial_sections();
    secs[kSlot[i]] = engine_.intern(t[i]);
    out[i] = engine_.atom(engine_.define_atom(names[i], roots[i], secs, true));
  }
  return out;
}

const GeneratingSet &Catalog::base() {
  if (!base_) {
    GeneratingSet g{"base", {}, 0};
    g.symbols.push_back({"x", engine_.element(fano::x()), true});
    g.symbols.push_back({"y", engine_.element(fano::y()), true});
    g.symbols.push_back({"z", engine_.element(fano::z()), true});
    base_ = std::move(g);
  }
  return *base_;
}

const GeneratingSet &Catalog::S(int n) {
  if (n < 1) throw std::invalid_argument("S(n) needs n >= 1");
  if (s_.empty()) {
    const Perm x = fano::x(), y = fano::y(), z = fano::z();
    auto a = trivial_sections();
    a[1] = single_letter(abar(x));
    a[3] = Letter::perm(x);
    auto b = trivial_sections();
    b[0] = Letter::perm(y);
    b[3] = single_letter(abar(y));
    auto c = trivial_sections();
    c[0] = single_letter(abar(z));
    c[1] = Letter::perm(z);
    GeneratingSet g{"S:1", {}, 1};
    g.symbols.push_back({"a", engine_.atom(engine_.define_atom("a1", x, a, true)), true});
    g.symbols.push_back({"b", engine_.atom(engine_.define_atom("b1", y, b, true)), true});
    g.symbols.push_back({"c", engine_.atom(engine_.define_atom("c1", z, c, true)), true});
    s_.push_back(std::move(g));
  }
  while (static_cast<int>(s_.size()) < n) {
    const GeneratingSet &prev = s_.back();
    const int level = prev.level + 1;
    const std::string k = std::to_string(level);
    auto primed = prime_triple({prev.symbols[0].element, prev.symbols[1].element,
                                prev.symbols[2].element},
                               {"a" + k, "b" + k, "c" + k});
    GeneratingSet g{"S:" + k, {}, level};
    g.symbols.push_back({"a", primed[0], true});
    g.symbols.push_back({"b", primed[1], true});
    g.symbols.push_back({"c", primed[2], true});
    s_.push_back(std::move(g));
  }
  return s_[n - 1];
}

const GeneratingSet &Catalog::tilde() {
  if (!tilde_) {
    static constexpr std::array<int, 3> kSlot{3, 0, 1};
    const std::array<Perm, 3> roots{fano::x(), fano::y(), fano::z()};
    const std::array<std::string, 3> names{"x~", "y~", "z~"};
    GeneratingSet g{"tilde", {}, 0};
    for (int i = 0; i < 3; ++i) {
      auto secs = trivial_sections();
      secs[kSlot[i]] = Letter::self();
      g.symbols.push_back({names[i], engine_.atom(engine_.define_atom(names[i], roots[i], secs, true)), true});
    }
    tilde_ = std::move(g);
  }
  return *tilde_;
}

FreeQuadruple Catalog::free_quadruple() {
  auto swappers = find_swappers(fano::psl32(), Point(1), Point(2));
  if (swappers.size() < 2) throw std::logic_error("PSL(3,2) has fewer than two 1<->2 swappers");
  return free_quadruple(swappers[0], swappers[1]);
}

FreeQuadruple Catalog::free_quadruple(const Perm &u, const Perm &v) {
  if (auto it = quadruples_.find({u, v}); it != quadruples_.end()) return it->second;
  if (u == v) throw std::invalid_argument("free quadruple needs u != v");
  FreeQuadruple q;
  q.u = u;
  q.v = v;
  const Element ubar = abar(u), vbar = abar(v);
  const Element eu = engine_.element(u), ev = engine_.element(v);
  q.a = engine_.multiply(ubar, eu);
  q.b = engine_.multiply(ubar, ev);
  q.c = engine_.multiply(vbar, eu);
  q.d = engine_.multiply(vbar, ev);
  const std::array<const Element *, 4> elems{&q.a, &q.b, &q.c, &q.d};
  for (int i = 0; i < 4; ++i) q.forms[i] = engine_.decompose(*elems[i]);

  const Perm swap12 = Perm::from_cycles("(1 2)");
  q.roots_swap_12 = true;
  for (const NodeForm &f : q.forms)
    if (f.root(Point(1)) != Point(2) || f.root(Point(2)) != Point(1)) q.roots_swap_12 = false;

  q.sections_match = true;
  for (int i = 0; i < 4; ++i) {
    const Element &first = i < 2 ? ubar : vbar;
    const Element &second = i < 2 ? eu : ev;
    const NodeForm &f = q.forms[i];
    if (!engine_.equals(f.sections[0], first) || !engine_.equals(f.sections[1], second))
      q.sections_match = false;
    for (int p = 2; p < kDegree; ++p)
      if (!engine_.is_identity(f.sections[p])) q.sections_match = false;
  }

  q.sigma = swap12 * q.forms[0].root;
  q.tau = swap12 * q.forms[1].root;
  q.shared_roots = q.forms[0].root == q.forms[2].root && q.forms[1].root == q.forms[3].root;
  q.sigma_ne_tau = q.sigma != q.tau && q.sigma(Point(1)) == Point(1) &&
                   q.sigma(Point(2)) == Point(2) && q.tau(Point(1)) == Point(1) &&
                   q.tau(Point(2)) == Point(2);
  quadruples_.emplace(std::make_pair(u, v), q);
  return q;
}

const GeneratingSet &Catalog::free_set() {
  if (!free_) {
    FreeQuadruple q = free_quadruple();
    GeneratingSet g{"free", {}, 0};
    g.symbols.push_back({"a", q.a, false});
    g.symbols.push_back({"b", q.b, false});
    g.symbols.push_back({"c", q.c, false});
    g.symbols.push_back({"d", q.d, false});
    free_ = std::move(g);
  }
  return *free_;
}

const GeneratingSet &Catalog::by_name(const std::string &selector) {
  if (selector == "base") return base();
  if (selector == "tilde") return tilde();
  if (selector == "free") return free_set();
  if (selector.rfind("S:", 0) == 0) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(selector.substr(2), &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != selector.size() - 2 || n < 1)
      throw std::invalid_argument("bad generating-set selector: " + selector);
    return S(n);
  }
  throw std::invalid_argument("unknown generating set '" + selector +
                              "' (expected base, S:n, tilde or free)");
}

NodeForm node_form(const Engine &engine, const Perm &root,
                   const std::array<std::optional<Element>, kDegree> &sections) {
  NodeForm f;
  f.root = root;
  for (int p = 0; p < kDegree; ++p) f.sections[p] = sections[p].value_or(engine.identity());
  return f;
}

std::vector<CatalogClaim> Catalog::identity_catalog() {
  if (claims_) return *claims_;
  Engine &E = engine_;
  const Perm x = fano::x(), y = fano::y(), z = fano::z();
  const Element xb = abar(x), yb = abar(y), zb = abar(z);
  const Element one = E.identity();
  using Sec = std::array<std::optional<Element>, kDegree>;
  auto pw = [&](const Element &g, int k) { return E.power(g, k); };
  auto mul = [&](std::initializer_list<Element> es) {
    Element acc;
    for (const Element &e : es) acc = E.multiply(acc, e);
    return acc;
  };
  std::vector<CatalogClaim> claims;

  claims.push_back({"sanity.identity", "1 = 1", Relation::Equal, one, one});

  // Wreath decomposition witnesses.
  {
    const Perm u = *find_fix_move(fano::psl32(), Point(1), Point(2));
    const Perm v = *find_fix_move(fano::psl32(), Point(2), Point(1));
    Element lhs1 = E.commutator(xb, E.conjugate(yb, E.element(u)));
    claims.push_back({"abar.commutator.u", "[abar, bbar^u] = <[abar,bbar],1,...,1> at (a,b)=(x,y)",
                      Relation::Equal, lhs1,
                      node_form(E, Perm(), Sec{E.commutator(xb, yb)})});
    Element lhs2 = E.commutator(xb, E.conjugate(yb, E.element(v)));
    claims.push_back({"abar.commutator.v", "[abar, bbar^v] = <1,[a,b],1,...,1> at (a,b)=(x,y)",
                      Relation::Equal, lhs2,
                      node_form(E, Perm(), Sec{std::nullopt, E.element(commutator(x, y))})});
  }

  const auto primed = prime_triple({E.element(x), E.element(y), E.element(z)}, {"x'", "y'", "z'"});

  // Priming of (x,y,z).
  {
    const Element &a = primed[0], &b = primed[1], &c = primed[2];
    Element abcb3 = pw(mul({a, b, c, b}), 3);
    Element bcac3 = pw(mul({b, c, a, c}), 3);
    Element caba3 = pw(mul({c, a, b, a}), 3);
    const Element ac = E.element(x * z), ca = E.element(z * x);
    const Element ba = E.element(y * x), ab = E.element(x * y);
    const Element cb = E.element(z * y), bc = E.element(y * z);
    claims.push_back({"prime.cube.abcb", "(a'b'c'b')^3 = <1,1,ac,ac,1,1,ca> at (a,b,c)=(x,y,z)",
                      Relation::Equal, abcb3,
                      node_form(E, Perm(), Sec{std::nullopt, std::nullopt, ac, ac, std::nullopt,
                                               std::nullopt, ca})});
    claims.push_back({"prime.cube.bcac", "(b'c'a'c')^3 = <ba,1,1,1,1,ba,ab> at (a,b,c)=(x,y,z)",
                      Relation::Equal, bcac3,
                      node_form(E, Perm(), Sec{ba, std::nullopt, std::nullopt, std::nullopt,
                                               std::nullopt, ba, ab})});
    claims.push_back({"prime.cube.caba", "(c'a'b'a')^3 = <1,cb,1,1,cb,1,bc> at (a,b,c)=(x,y,z)",
                      Relation::Equal, caba3,
                      node_form(E, Perm(), Sec{std::nullopt, cb, std::nullopt, std::nullopt, cb,
                                               std::nullopt, bc})});
    Element v = E.commutator(abcb3, bcac3);
    claims.push_back({"prime.commutator.nontrivial", "v = [(a'b'c'b')^3,(b'c'a'c')^3] != 1 at (a,b,c)=(x,y,z)",
                      Relation::NotIdentity, v, std::monostate{}});
    // The last section is the commutator of the last sections of the two
    // factors, [ca,ab]; the form [ca,ac] is trivial since ac = (ca)^-1.
    Sec vs;
    vs[6] = E.element(commutator(z * x, x * y));
    claims.push_back({"prime.commutator", "v = <1,...,1,[ca,ab]>", Relation::Equal, v,
                      node_form(E, Perm(), vs)});
    claims.push_back({"prime.commutator.ca-ac", "[ca,ac] = 1 in A at (x,y,z)", Relation::IsIdentity,
                      E.element(commutator(z * x, x * z)), std::monostate{}});
  }

  // The involutive generating set S1.
  {
    const GeneratingSet &s1 = S(1);
    const Element &a = s1.symbols[0].element, &b = s1.symbols[1].element,
                  &c = s1.symbols[2].element;
    Element ab4 = pw(E.multiply(a, b), 4);
    Element bc4 = pw(E.multiply(b, c), 4);
    Element ca4 = pw(E.multiply(c, a), 4);
    claims.push_back({"s1.fourth-power.ab", "(ab)^4 = <1,xbar,xbar,1,1,xbar,xbar>", Relation::Equal, ab4,
                      node_form(E, Perm(), Sec{std::nullopt, xb, xb, std::nullopt, std::nullopt,
                                               xb, xb})});
    claims.push_back({"s1.fourth-power.bc", "(bc)^4 = <1,1,1,ybar,ybar,ybar,ybar>", Relation::Equal, bc4,
                      node_form(E, Perm(), Sec{std::nullopt, std::nullopt, std::nullopt, yb, yb,
                                               yb, yb})});
    claims.push_back({"s1.fourth-power.ca", "(ca)^4 = <zbar,1,zbar,1,zbar,1,zbar>", Relation::Equal, ca4,
                      node_form(E, Perm(), Sec{zb, std::nullopt, zb, std::nullopt, zb,
                                               std::nullopt, zb})});
    claims.push_back({"fourth-power.x-ybar", "(x ybar)^4 = 1", Relation::IsIdentity,
                      pw(E.multiply(E.element(x), yb), 4), std::monostate{}});
    Element u = E.commutator(E.commutator(ab4, bc4), ca4);
    Sec us;
    us[6] = E.commutator(E.commutator(xb, yb), zb);
    claims.push_back({"s1.nested-commutator", "u = [[(ab)^4,(bc)^4],(ca)^4] = <1,...,1,[[xbar,ybar],zbar]>",
                      Relation::Equal, u, node_form(E, Perm(), us)});
    claims.push_back({"s1.nested-commutator.nontrivial", "u != 1", Relation::NotIdentity, u, std::monostate{}});

    Element lift_a = E.recompose(node_form(E, Perm(), Sec{std::nullopt, xb}));
    Element lift_b = E.recompose(node_form(E, Perm(), Sec{std::nullopt, std::nullopt, std::nullopt, yb}));
    Element lift_c = E.recompose(node_form(E, Perm(), Sec{zb}));
    Element a_prime = E.multiply(lift_a, a);
    claims.push_back({"s1.prime.a", "a' = <1,xbar,1,1,1,1,1>a = <1,1,1,x,1,1,1>x", Relation::Equal,
                      a_prime,
                      node_form(E, x, Sec{std::nullopt, std::nullopt, std::nullopt, E.element(x)})});
    claims.push_back({"s1.prime.b", "<1,1,1,ybar,1,1,1>b = <y,1,...,1>y",
                      Relation::Equal, E.multiply(lift_b, b),
                      node_form(E, y, Sec{E.element(y)})});
    claims.push_back({"s1.prime.c", "<zbar,1,...,1>c = <1,z,1,...,1>z", Relation::Equal,
                      E.multiply(lift_c, c), node_form(E, z, Sec{std::nullopt, E.element(z)})});
    claims.push_back({"s1.prime.from-base", "<1,xbar,1,1,1,1,1>a = prime of x", Relation::Equal, a_prime,
                      primed[0]});
  }

  // Delta witnesses, instantiated at S2 = S1'.
  {
    const GeneratingSet &s1 = S(1);
    const GeneratingSet &s2 = S(2);
    const Element &a = s1.symbols[0].element, &b = s1.symbols[1].element,
                  &c = s1.symbols[2].element;
    const Element &ap = s2.symbols[0].element, &bp = s2.symbols[1].element,
                  &cp = s2.symbols[2].element;
    claims.push_back({"s2.word.aba", "a'b'a' = <1,1,1,1,b,1,1>xyx", Relation::Equal,
                      mul({ap, bp, ap}),
                      node_form(E, x * y * x, Sec{std::nullopt, std::nullopt, std::nullopt,
                                                  std::nullopt, b})});
    claims.push_back({"s2.word.acbacabca", "a'c'b'a'c'a'b'c'a' = <a,cb,1,1,bc,a,c>yzxzy",
                      Relation::Equal, mul({ap, cp, bp, ap, cp, ap, bp, cp, ap}),
                      node_form(E, y * z * x * z * y,
                                Sec{a, E.multiply(c, b), std::nullopt, std::nullopt,
                                    E.multiply(b, c), a, c})});
  }

  claims_ = claims;
  return claims;
}

ClaimVerdict Catalog::check(const CatalogClaim &claim) const {
  ClaimVerdict v;
  v.id = claim.id;
  v.anchor = claim.anchor;
  v.relation = claim.relation;
  const std::uint64_t before = engine_.stats().identity_tests;
  try {
    switch (claim.relation) {
      case Relation::IsIdentity:
        v.pass = engine_.is_identity(claim.lhs);
        break;
      case Relation::NotIdentity:
        v.pass = !engine_.is_identity(claim.lhs);
        break;
      case Relation::Equal:
      case Relation::NotEqual: {
        bool equal = false;
        if (const auto *e = std::get_if<Element>(&claim.rhs)) {
          equal = engine_.equals(claim.lhs, *e);
        } else if (const auto *f = std::get_if<NodeForm>(&claim.rhs)) {
          NodeForm got = engine_.decompose(claim.lhs);
          equal = got.root == f->root;
          std::ostringstream why;
          if (!equal) why << "root " << got.root.to_cycles() << " != " << f->root.to_cycles();
          for (int p = 0; p < kDegree; ++p) {
            if (!engine_.equals(got.sections[p], f->sections[p])) {
              if (equal) why << "section " << (p + 1) << " differs";
              equal = false;
            }
          }
          v.detail = why.str();
        } else {
          equal = engine_.is_identity(claim.lhs);
        }
        v.pass = claim.relation == Relation::Equal ? equal : !equal;
        break;
      }
    }
  } catch (const ResourceError &err) {
    v.pass = false;
    v.detail = err.what();
  }
  v.identity_tests = engine_.stats().identity_tests - before;
  return v;
}

std::string abar_act_prefix(const std::string &s, const Perm &a) {
  std::string out = s;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (s[m] == '1') continue;
    if (s[m] == '2' && m + 1 < s.size()) {
      int p = s[m + 1] - '1';
      out[m + 1] = static_cast<char>('1' + a.image_index(p));
    }
    break;
  }
  return out;
}

}  // namespace wilson
