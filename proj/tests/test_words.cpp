#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "wilson/words.hpp"

using namespace wilson;

TEST_CASE("reduced words") {
  CHECK(reduced_word_count(0) == 1);
  CHECK(reduced_word_count(1) == 3);
  CHECK(reduced_word_count(3) == 12);
  for (int n = 0; n <= 8; ++n) {
    const auto ws = reduced_words(n);
    CHECK(ws.size() == reduced_word_count(n));
    CHECK(std::is_sorted(ws.begin(), ws.end()));
    for (const auto &w : ws) CHECK(is_reduced(w));
  }
  CHECK_FALSE(is_reduced(parse_iword("abba")));
  CHECK(to_string(parse_iword("a'b'c'")) == "abc");
  CHECK_THROWS_AS(parse_iword("abd"), std::invalid_argument);
}

TEST_CASE("Delta membership and occurrences") {
  CHECK(contains_delta(parse_iword("aba")));
  CHECK_FALSE(contains_delta(parse_iword("abc")));
  CHECK(contains_delta(parse_iword("acbacabca")));
  // aba at 0 and 2; bab is not a Delta pattern.
  CHECK(count_delta_occurrences(parse_iword("ababa")) == 2);
  CHECK(count_delta_occurrences(parse_iword("bcbcb")) == 2);
  CHECK(count_delta_occurrences(parse_iword("")) == 0);
}

TEST_CASE("Delta-free counts") {
  CHECK(count_delta_free(0) == 1);
  CHECK(count_delta_free(1) == 3);
  CHECK(count_delta_free(2) == 6);
  CHECK(count_delta_free(3) == 9);
  for (int n = 0; n <= 15; ++n) CHECK(count_delta_free(n) == count_delta_free_naive(n));
}

TEST_CASE("lemma report") {
  const Lemma30Report r = verify_lemma30(40);
  CHECK(r.all_within_30);
  CHECK(r.within_reduced_total);
  REQUIRE(r.counts.size() == 40);
  for (int n = 1; n <= 40; ++n) CHECK(r.counts[n - 1] <= reduced_word_count(n));
  CHECK(r.plateau_value <= 30);
  CHECK(r.plateau_from <= 20);
  CHECK_THROWS_AS(verify_lemma30(0), std::invalid_argument);
}

TEST_CASE("finite bound") {
  CHECK(ceil_eta_n(10, 0.3) == 3);
  CHECK(ceil_eta_n(10, 0.31) == 4);
  CHECK(finite_bound_F_less(10, 0.3) == doctest::Approx(9720000.0).epsilon(1e-12));
  // With the 30 replaced by 31 the value grows.
  const double k = 3, with31 = k * std::pow(31.0, k) * 120.0;
  CHECK(with31 > finite_bound_F_less(10, 0.3));
  for (int n = 1; n <= 20; ++n)
    CHECK(finite_bound_F_less(n, 0.999) >= static_cast<double>(reduced_word_count(n)));
  CHECK_THROWS_AS(finite_bound_F_less(10, 0.0), std::domain_error);
  CHECK_THROWS_AS(finite_bound_F_less(0, 0.5), std::domain_error);
}

TEST_CASE("geodesic Delta statistics") {
  std::vector<IWord> words;
  for (int n = 0; n <= 6; ++n)
    for (auto &w : reduced_words(n)) words.push_back(w);
  const auto one = geodesic_delta_stats(words, 1.0, 6);
  for (const auto &row : one) CHECK(row.count_below == reduced_word_count(row.n));
  const auto rows = geodesic_delta_stats(words, 0.2, 6);
  CHECK(rows[0].count_below == 3);
  CHECK(rows[0].count_below == count_delta_free(1));
  for (const auto &row : rows) CHECK(row.count_below + row.count_at_least >= reduced_word_count(row.n));
}
