#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wilson {

/// Word over the involutive alphabet {a′,b′,c′}, letters encoded 0,1,2.
using IWord = std::vector<std::uint8_t>;

IWord parse_iword(const std::string &text);  // "aba" or "a'b'a'"
std::string to_string(const IWord &w);

bool is_reduced(const IWord &w);

/// Calls `visit` for every reduced word of length n, in lexicographic order.
void for_each_reduced_word(int n, const std::function<void(const IWord &)> &visit);
std::vector<IWord> reduced_words(int n);
/// 3·2ⁿ⁻¹ for n ≥ 1, and 1 for n = 0.
std::uint64_t reduced_word_count(int n);

/// The six patterns a′b′a′, b′c′b′, c′a′c′ and their three length-9 partners.
const std::array<IWord, 6> &delta_patterns();

bool contains_delta(const IWord &w);
/// Number of (pattern, start) matches; overlapping matches all count.
int count_delta_occurrences(const IWord &w);

/// Number of reduced words of length n with no Δ subword, by a walk over the
/// automaton whose states are the last (up to) eight letters.
std::uint64_t count_delta_free(int n);
/// Same count by enumerating every reduced word.
std::uint64_t count_delta_free_naive(int n);

struct Lemma30Report {
  int max_n = 0;
  std::vector<std::uint64_t> counts;  // counts[n-1] = count_delta_free(n)
  bool all_within_30 = false;
  bool within_reduced_total = false;
  std::uint64_t plateau_value = 0;
  int plateau_from = 0;  // least n with counts constant from n to max_n
};

Lemma30Report verify_lemma30(int max_n);

/// ⌈ηn⌉ with a small guard against binary round-off (0.3·10 = 3, not 4).
int ceil_eta_n(int n, double eta);

/// log of ⌈ηn⌉·30^⌈ηn⌉·C(n,⌈ηn⌉).
double log_finite_bound_F_less(int n, double eta);
double finite_bound_F_less(int n, double eta);

struct DeltaStatsRow {
  int n = 0;
  std::uint64_t count_below = 0;     // occurrences ≤ ηn
  std::uint64_t count_at_least = 0;  // occurrences ≥ ηn
  double bound = 0;
  bool within_bound = false;
};

/// Splits geodesic words by exact length and by Δ-occurrence count against
/// ηn, and compares the low-count side with the finite bound.
std::vector<DeltaStatsRow> geodesic_delta_stats(std::span<const IWord> geodesics, double eta,
                                                int max_length);

}  // namespace wilson
