#include <algorithm>

#include "doctest.h"
#include "wilson/growth.hpp"

using namespace wilson;

TEST_CASE("small balls of S_1") {
  Engine e;
  Catalog c(e);
  CHECK(enumerate_ball(e, c.S(1), 0).size() == 1);
  const Ball b1 = enumerate_ball(e, c.S(1), 1);
  CHECK(b1.size() == 4);
  CHECK(enumerate_ball(e, c.S(1), 2).size() <= 10);
  CHECK_THROWS_AS(enumerate_ball(e, c.S(1), -1), std::invalid_argument);
}

TEST_CASE("ball invariants") {
  Engine e;
  Catalog c(e);
  for (const char *sel : {"S:1", "S:2", "tilde", "free"}) {
    CAPTURE(sel);
    const int R = std::string(sel) == "free" ? 3 : 6;
    const Ball b = enumerate_ball(e, c.by_name(sel), R);
    CHECK(b.members[0].empty());
    for (std::size_t i = 1; i < b.size(); ++i) {
      const auto &g = b.geodesic[i];
      const auto &p = b.geodesic[i - 1];
      CHECK((p.size() < g.size() || (p.size() == g.size() && p < g)));
      CHECK(static_cast<int>(g.size()) <= R);
    }
    const auto &gs = c.by_name(sel);
    std::vector<Element> gens;
    for (std::size_t s = 0; s < b.symbols.size(); ++s)
      gens.push_back(s < gs.size() ? gs.symbols[s].element
                                   : e.inverse(gs.symbols[b.inverse_symbol[s]].element));
    for (std::size_t i = 0; i < b.size(); ++i) {
      Element w = e.identity();
      for (int s : b.geodesic[i]) w = e.multiply(w, gens[s]);
      CHECK(e.equals(w, b.members[i]));
      for (std::size_t s = 0; s < b.symbols.size(); ++s) {
        const long j = b.edges[i][s];
        if (j < 0) {
          CHECK(static_cast<int>(b.geodesic[i].size()) == R);
          continue;
        }
        CHECK(b.edges[j][b.inverse_symbol[s]] == static_cast<long>(i));
        const auto d = static_cast<long>(b.geodesic[i].size()) - static_cast<long>(b.geodesic[j].size());
        CHECK(std::abs(d) <= 1);
      }
    }
  }
}

TEST_CASE("dedup agrees with exact equality") {
  Engine e;
  Catalog c(e);
  for (const char *sel : {"S:1", "S:2", "tilde", "free"}) {
    const int R = std::string(sel) == "free" ? 3 : 6;
    BallOptions fast, exact;
    exact.exact_only = true;
    CHECK(ball_sizes(enumerate_ball(e, c.by_name(sel), R, fast)) ==
          ball_sizes(enumerate_ball(e, c.by_name(sel), R, exact)));
  }
}

TEST_CASE("thread count does not change the ball") {
  Engine e;
  Catalog c(e);
  BallOptions one, four;
  four.threads = 4;
  const Ball a = enumerate_ball(e, c.S(2), 8, one);
  const Ball b = enumerate_ball(e, c.S(2), 8, four);
  CHECK(a.geodesic == b.geodesic);
  CHECK(a.edges == b.edges);
}

TEST_CASE("ball sizes, estimates and submultiplicativity") {
  Engine e;
  Catalog c(e);
  for (const char *sel : {"S:1", "S:2", "tilde"}) {
    const auto sizes = ball_sizes(e, c.by_name(sel), 8);
    CHECK(std::is_sorted(sizes.begin(), sizes.end()));
    CHECK(submultiplicativity_violations(sizes).empty());
  }
  // Rank-2 free group: 1 + 4(3^r - 1)/2.
  std::vector<std::uint64_t> free2{1};
  std::uint64_t sphere = 4;
  for (int r = 1; r <= 10; ++r, sphere *= 3) free2.push_back(free2.back() + sphere);
  const auto rows = growth_estimates(free2);
  for (std::size_t r = 2; r < rows.size(); ++r) CHECK(rows[r].estimate_ratio == doctest::Approx(3.0));
  CHECK(rows[10].estimate_root < 4.0);
  CHECK(submultiplicativity_violations({1, 4, 20}).size() == 1);
}

TEST_CASE("ball conventions") {
  Engine e;
  Catalog c(e);
  const auto exactly = ball_sizes(e, c.base(), 12, BallConvention::Exactly);
  // A is perfect, so long enough products of exactly n generators cover it.
  CHECK(exactly.back() == 168);
  CHECK(exactly[10] < 168);
  const auto at_most = ball_sizes(e, c.base(), 10, BallConvention::AtMost);
  CHECK(at_most.back() == 168);
  const auto t = ball_sizes(e, c.tilde(), 6, BallConvention::Exactly);
  CHECK(t[0] == 1);
  CHECK(t[1] == 3);
}

TEST_CASE("word partitions") {
  Engine e;
  Catalog c(e);
  CHECK(word_partition(e, c.tilde(), 0).class_count == 1);
  const WordPartition t1 = word_partition(e, c.tilde(), 1);
  CHECK(t1.class_count == 4);
  CHECK(partitions_equal(t1, t1));
  CHECK(partitions_equal(t1, word_partition(e, c.S(1), 1)));
  CHECK_THROWS_AS(partitions_equal(t1, word_partition(e, c.S(1), 2)), std::invalid_argument);
  CHECK_THROWS_AS(word_partition(e, c.free_set(), 1), std::invalid_argument);
  const WordPartition p = word_partition(e, c.S(1), 5);
  for (std::size_t i = 0; i < p.words.size(); ++i) CHECK(p.class_of[i] <= i);
  const auto diff = first_partition_difference(e, c.tilde(), c.S(1), 8);
  REQUIRE(diff.has_value());
  CHECK(*diff > 1);
}

TEST_CASE("local isomorphism search") {
  Engine e;
  Catalog c(e);
  CHECK(find_min_n_local_iso(c, 1, 4).n == 1);
  for (int R : {2, 3, 4}) {
    const LocalIsoResult r = find_min_n_local_iso(c, R, 4);
    REQUIRE(r.n.has_value());
    const WordPartition t = word_partition(e, c.tilde(), R);
    const WordPartition s = word_partition(e, c.S(*r.n), R);
    CHECK(partitions_equal(t, s));
    CHECK(ball_sizes(e, c.tilde(), R).back() == ball_sizes(e, c.S(*r.n), R).back());
  }
  CHECK_THROWS_AS(find_min_n_local_iso(c, 0, 4), std::invalid_argument);
}

TEST_CASE("free monoid witness") {
  Engine e;
  Catalog c(e);
  const FreeQuadruple q = c.free_quadruple();
  const FreeMonoidReport r1 = free_monoid_check(c, q, 1, 1);
  CHECK(r1.distinct == 3);
  CHECK(r1.pass());
  const FreeMonoidReport r8 = free_monoid_check(c, q, 8, 3);
  CHECK(r8.distinct == 511);
  CHECK(r8.expected_distinct == 511);
  CHECK(r8.refinement_ok);
  CHECK(r8.counterexample.empty());
}

TEST_CASE("geodesic words of a three-involution ball") {
  Engine e;
  Catalog c(e);
  const Ball b = enumerate_ball(e, c.S(2), 6);
  const auto words = geodesic_iwords(b);
  CHECK(words.size() == b.size());
  for (const auto &w : words) CHECK(is_reduced(w));
  CHECK_THROWS_AS(geodesic_iwords(enumerate_ball(e, c.free_set(), 1)), std::invalid_argument);
}
