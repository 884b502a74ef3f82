#include "wilson/words.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace wilson {

namespace {

constexpr double kEtaGuard = 1e-9;
constexpr std::size_t kSuffixLength = 8;  // longest pattern minus one

bool ends_with(const IWord &w, const IWord &pattern) {
  return w.size() >= pattern.size() &&
         std::equal(pattern.begin(), pattern.end(), w.end() - static_cast<long>(pattern.size()));
}

}  // namespace

IWord parse_iword(const std::string &text) {
  IWord w;
  for (char ch : text) {
    if (ch == '\'' || ch == ' ') continue;
    if (ch < 'a' || ch > 'c') throw std::invalid_argument("reduced-word letters are a, b, c");
    w.push_back(static_cast<std::uint8_t>(ch - 'a'));
  }
  return w;
}

std::string to_string(const IWord &w) {
  std::string out;
  for (auto l : w) out += static_cast<char>('a' + l);
  return out;
}

bool is_reduced(const IWord &w) {
  return std::adjacent_find(w.begin(), w.end()) == w.end();
}

void for_each_reduced_word(int n, const std::function<void(const IWord &)> &visit) {
  if (n < 0) throw std::invalid_argument("word length must be non-negative");
  IWord w;
  w.reserve(static_cast<std::size_t>(n));
  std::function<void()> rec = [&] {
    if (static_cast<int>(w.size()) == n) {
      visit(w);
      return;
    }
    for (std::uint8_t l = 0; l < 3; ++l) {
      if (!w.empty() && w.back() == l) continue;
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
}

std::vector<IWord> reduced_words(int n) {
  std::vector<IWord> out;
  for_each_reduced_word(n, [&](const IWord &w) { out.push_back(w); });
  return out;
}

std::uint64_t reduced_word_count(int n) {
  if (n < 0) throw std::invalid_argument("word length must be non-negative");
  if (n == 0) return 1;
  return 3ull << (n - 1);
}

const std::array<IWord, 6> &delta_patterns() {
  static const std::array<IWord, 6> patterns{
      parse_iword("aba"),       parse_iword("bcb"),       parse_iword("cac"),
      parse_iword("acbacabca"), parse_iword("bacbabcab"), parse_iword("cbacbcabc")};
  return patterns;
}

int count_delta_occurrences(const IWord &w) {
  int count = 0;
  for (const IWord &p : delta_patterns()) {
    if (p.size() > w.size()) continue;
    for (std::size_t i = 0; i + p.size() <= w.size(); ++i)
      if (std::equal(p.begin(), p.end(), w.begin() + static_cast<long>(i))) ++count;
  }
  return count;
}

bool contains_delta(const IWord &w) { return count_delta_occurrences(w) > 0; }

std::uint64_t count_delta_free(int n) {
  if (n < 0) throw std::invalid_argument("word length must be non-negative");
  // Every Δ occurrence is caught as a suffix the moment its last letter is
  // appended, so the walk only needs the last eight letters.
  std::map<IWord, std::uint64_t> layer{{IWord{}, 1}};
  IWord next;
  for (int step = 0; step < n; ++step) {
    std::map<IWord, std::uint64_t> grown;
    for (const auto &[suffix, count] : layer) {
      for (std::uint8_t l = 0; l < 3; ++l) {
        if (!suffix.empty() && suffix.back() == l) continue;
        next = suffix;
        next.push_back(l);
        bool hit = false;
        for (const IWord &p : delta_patterns())
          if (ends_with(next, p)) hit = true;
        if (hit) continue;
        if (next.size() > kSuffixLength) next.erase(next.begin());
        grown[next] += count;
      }
    }
    layer = std::move(grown);
  }
  std::uint64_t total = 0;
  for (const auto &entry : layer) total += entry.second;
  return total;
}

std::uint64_t count_delta_free_naive(int n) {
  std::uint64_t total = 0;
  for_each_reduced_word(n, [&](const IWord &w) {
    if (!contains_delta(w)) ++total;
  });
  return total;
}

Lemma30Report verify_lemma30(int max_n) {
  if (max_n < 1) throw std::invalid_argument("verify_lemma30 needs max_n >= 1");
  Lemma30Report r;
  r.max_n = max_n;
  r.all_within_30 = true;
  r.within_reduced_total = true;
  for (int n = 1; n <= max_n; ++n) {
    std::uint64_t c = count_delta_free(n);
    r.counts.push_back(c);
    if (c > 30) r.all_within_30 = false;
    if (c > reduced_word_count(n)) r.within_reduced_total = false;
  }
  r.plateau_value = r.counts.back();
  r.plateau_from = max_n;
  while (r.plateau_from > 1 && r.counts[r.plateau_from - 2] == r.plateau_value) --r.plateau_from;
  return r;
}

int ceil_eta_n(int n, double eta) {
  return static_cast<int>(std::ceil(eta * n - kEtaGuard));
}

double log_finite_bound_F_less(int n, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("eta must lie in (0,1)");
  if (n < 1) throw std::domain_error("n must be positive");
  const int k = std::clamp(ceil_eta_n(n, eta), 1, n);
  return std::log(static_cast<double>(k)) + k * std::log(30.0) + std::lgamma(n + 1.0) -
         std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double finite_bound_F_less(int n, double eta) { return std::exp(log_finite_bound_F_less(n, eta)); }

std::vector<DeltaStatsRow> geodesic_delta_stats(std::span<const IWord> geodesics, double eta,
                                                int max_length) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("eta must lie in (0,1]");
  std::vector<DeltaStatsRow> rows(static_cast<std::size_t>(max_length));
  for (int n = 1; n <= max_length; ++n) rows[n - 1].n = n;
  for (const IWord &w : geodesics) {
    const int n = static_cast<int>(w.size());
    if (n == 0 || n > max_length) continue;
    const double threshold = eta * n;
    const int occ = count_delta_occurrences(w);
    DeltaStatsRow &row = rows[n - 1];
    if (occ <= threshold + kEtaGuard) ++row.count_below;
    if (occ >= threshold - kEtaGuard) ++row.count_at_least;
  }
  for (DeltaStatsRow &row : rows) {
    row.bound = eta < 1.0 ? finite_bound_F_less(row.n, eta)
                          : std::numeric_limits<double>::infinity();
    row.within_bound = static_cast<double>(row.count_below) <= row.bound;
  }
  return rows;
}

}  // namespace wilson
