#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wilson/catalog.hpp"
#include "wilson/engine.hpp"
#include "wilson/words.hpp"

namespace wilson {

/// Distinct group elements, deduplicated by signature digest with exact
/// equality as the authority on every digest match.
///
/// The digest depth starts at `initial_depth` and grows by one each time two
/// distinct elements share a digest, up to `max_depth`.
class ElementIndex {
 public:
  explicit ElementIndex(const Engine &engine, bool exact_only = false, int initial_depth = 3,
                        int max_depth = 8);

  /// Index of an element equal to `e`, if present.
  std::optional<std::size_t> find(const Element &e);
  /// Same, with a digest already computed at `depth`.
  std::optional<std::size_t> find(const Element &e, std::uint64_t digest, int depth);
  std::size_t insert(const Element &e);
  /// find, then insert if absent; returns (index, inserted).
  std::pair<std::size_t, bool> find_or_insert(const Element &e);

  std::size_t size() const { return members_.size(); }
  const Element &at(std::size_t i) const { return members_[i]; }
  int depth() const { return depth_; }
  std::uint64_t exact_tests() const { return exact_tests_; }
  std::uint64_t collisions() const { return collisions_; }

 private:
  struct WordHash {
    std::size_t operator()(const std::vector<Letter> &w) const noexcept;
  };
  void rehash();
  std::optional<std::size_t> lookup(const Element &e, std::uint64_t digest);

  const Engine &engine_;
  bool exact_only_;
  int depth_;
  int max_depth_;
  std::vector<Element> members_;
  std::vector<std::uint64_t> digests_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
  std::unordered_map<std::vector<Letter>, std::size_t, WordHash> by_word_;
  std::uint64_t exact_tests_ = 0;
  std::uint64_t collisions_ = 0;
};

enum class BallConvention { AtMost, Exactly };

struct BallOptions {
  bool exact_only = false;  // compare against every member, no digests
  bool with_edges = true;
  int threads = 1;
  int signature_depth = 3;
};

/// Ball of radius R in a Cayley graph. Members are ordered by (length,
/// lexicographic geodesic); geodesic[i] is the least shortest word for member
/// i, as indices into `symbols`. Non-involutive generators get an inverse
/// symbol "s^-1" appended after the given ones.
struct Ball {
  std::string genset;
  std::vector<std::string> symbols;
  std::vector<bool> involution;
  std::vector<int> inverse_symbol;  // index of the symbol inverse to each symbol
  int radius = 0;
  std::vector<Element> members;
  std::vector<std::vector<int>> geodesic;
  std::vector<std::vector<long>> edges;  // edges[i][s] = target member or -1 (outside)
  std::uint64_t exact_tests = 0;
  std::uint64_t collisions = 0;
  int final_signature_depth = 0;

  std::size_t size() const { return members.size(); }
  std::string geodesic_string(std::size_t i) const;
};

Ball enumerate_ball(const Engine &engine, const GeneratingSet &genset, int radius,
                    const BallOptions &options = {});

/// #B(r) for r = 0..rmax.
std::vector<std::uint64_t> ball_sizes(const Engine &engine, const GeneratingSet &genset, int rmax,
                                      BallConvention convention = BallConvention::AtMost,
                                      const BallOptions &options = {});
std::vector<std::uint64_t> ball_sizes(const Ball &ball);

struct GrowthRow {
  int radius = 0;
  std::uint64_t ball_size = 0;
  std::uint64_t sphere_size = 0;
  double estimate_root = 0;   // #B(r)^(1/r)
  double estimate_ratio = 0;  // #S(r)/#S(r−1)
};

std::vector<GrowthRow> growth_estimates(const std::vector<std::uint64_t> &sizes);

/// Pairs (n, m) with n + m in range and #B(n+m) > #B(n)·#B(m).
std::vector<std::pair<int, int>> submultiplicativity_violations(
    const std::vector<std::uint64_t> &sizes);

/// Geodesics of a three-involution ball as words over {a′,b′,c′}.
std::vector<IWord> geodesic_iwords(const Ball &ball);

/// Reduced words of length ≤ R over a three-symbol involutive set, split into
/// classes of equal group elements. Words are listed in (length, lex) order;
/// class_of[i] is the least index in word i's class, so two partitions over
/// the same radius are equal iff their class_of vectors are.
struct WordPartition {
  int radius = 0;
  std::vector<IWord> words;
  std::vector<std::size_t> class_of;
  std::size_t class_count = 0;
};

WordPartition word_partition(const Engine &engine, const GeneratingSet &genset, int radius);
/// Throws std::invalid_argument on a radius mismatch.
bool partitions_equal(const WordPartition &p, const WordPartition &q);

struct LocalIsoResult {
  int radius = 0;
  int max_n = 0;
  std::optional<int> n;
  std::size_t tilde_classes = 0;
  std::vector<bool> agrees;  // agrees[k-1] for S_k, k tried in order
};

LocalIsoResult find_min_n_local_iso(Catalog &catalog, int radius, int max_n);

/// Least R ≤ cap where the word partitions of the two sets differ.
std::optional<int> first_partition_difference(const Engine &engine, const GeneratingSet &p,
                                              const GeneratingSet &q, int cap);

struct FreeMonoidReport {
  Perm u, v;
  int length = 0;
  std::uint64_t expected_distinct = 0;
  std::uint64_t distinct = 0;
  bool distinct_ok = false;
  int refinement_length = 0;
  std::uint64_t refinement_words = 0;
  bool refinement_ok = false;
  std::string counterexample;  // empty when both checks pass
  bool pass() const { return distinct_ok && refinement_ok; }
};

/// (i) {a,d}-words of length ≤ L give 2^(L+1) − 1 distinct elements;
/// (ii) {a,b,c,d}-words of length ≤ refinement_length that are equal in W
/// have equal images under a=b, c=d.
FreeMonoidReport free_monoid_check(Catalog &catalog, const FreeQuadruple &q, int length,
                                   int refinement_length);

/// Elements expressible as a product of exactly n generators, for n = 0..rmax.
std::vector<std::uint64_t> exact_length_sizes(const Engine &engine, const GeneratingSet &genset,
                                              int rmax);

}  // namespace wilson
