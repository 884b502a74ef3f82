#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wilson/perm.hpp"

namespace wilson {

/// Raised when an identity test explores more states than the budget allows.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AtomId = std::uint32_t;

/// One letter of a word: either a root permutation or a (possibly inverted)
/// self-similar atom. Packed into 32 bits so words hash cheaply.
class Letter {
 public:
  constexpr Letter() : code_(kIdentityCode) {}

  static Letter perm(const Perm &p) { return Letter(p.pack()); }
  static Letter atom(AtomId id, bool inverted = false) {
    return Letter(kAtomBit | (id << 1) | (inverted ? 1u : 0u));
  }
  static constexpr Letter identity() { return Letter(); }
  /// Placeholder for "the atom being defined" in a recursive section table.
  static constexpr Letter self() { return Letter(kSelfCode); }

  bool is_perm() const { return (code_ & kAtomBit) == 0; }
  bool is_atom() const { return (code_ & kAtomBit) != 0 && code_ != kSelfCode; }
  bool is_self() const { return code_ == kSelfCode; }
  bool is_identity() const { return code_ == kIdentityCode; }
  Perm as_perm() const { return Perm::unpack(code_); }
  AtomId atom_id() const { return (code_ & ~kAtomBit) >> 1; }
  bool inverted() const { return (code_ & 1u) != 0; }
  std::uint32_t code() const { return code_; }

  auto operator<=>(const Letter &) const = default;

 private:
  static constexpr std::uint32_t kAtomBit = 0x80000000u;
  static constexpr std::uint32_t kSelfCode = 0xFFFFFFFFu;
  // Packed identity: images 0..6 in 3-bit fields.
  static constexpr std::uint32_t kIdentityCode =
      (6u << 18) | (5u << 15) | (4u << 12) | (3u << 9) | (2u << 6) | (1u << 3) | 0u;

  constexpr explicit Letter(std::uint32_t code) : code_(code) {}
  std::uint32_t code_;
};

/// A group element as a normalized word over letters.
///
/// Only the Engine builds non-empty Elements, so every instance is in normal
/// form: adjacent permutation letters folded, identity letters dropped, g·g⁻¹
/// and squares of involutive atoms cancelled. Comparing letters() is syntactic
/// equality of normal forms; use Engine::equals for equality in the group.
class Element {
 public:
  Element() = default;

  const std::vector<Letter> &letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

 private:
  friend class Engine;
  explicit Element(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

/// g = ⟨g₁,…,g₇⟩a.
struct NodeForm {
  Perm root;
  std::array<Element, kDegree> sections;
};

/// Root permutations of all sections down to a fixed depth.
struct Portrait {
  Perm root;
  std::vector<Portrait> children;  // empty at the last level, else 7 entries
};

struct EngineStats {
  std::uint64_t identity_tests = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t states_visited = 0;
  std::uint64_t max_closure = 0;
};

/// Self-similar transformations of P*: atom registry, word arithmetic and
/// the exact word problem.
///
/// Atoms must all be registered before the engine is shared between
/// threads. After that, every const-looking operation is safe to call
/// concurrently; the identity cache serializes its insertions.
class Engine {
 public:
  static constexpr std::uint64_t kDefaultStateBudget = 1'000'000;

  explicit Engine(std::uint64_t state_budget = kDefaultStateBudget);
  Engine(const Engine &) = delete;
  Engine &operator=(const Engine &) = delete;

  /// Registers g = ⟨sections⟩root. Sections may name previously defined
  /// atoms, permutations, or Letter::self(). If `involution` is set the
  /// engine checks g² = 1 and throws std::invalid_argument otherwise.
  AtomId define_atom(std::string name, const Perm &root,
                     const std::array<Letter, kDegree> &sections, bool involution);

  const std::string &atom_name(AtomId id) const { return atoms_.at(id).name; }
  bool is_involution(AtomId id) const { return atoms_.at(id).involution; }
  std::size_t atom_count() const { return atoms_.size(); }

  Element identity() const { return Element(); }
  Element element(Letter l) const;
  Element element(const Perm &p) const { return element(Letter::perm(p)); }
  Element atom(AtomId id) const { return element(Letter::atom(id)); }
  Element word(std::span<const Letter> letters) const;

  Element multiply(const Element &g, const Element &h) const;
  Element inverse(const Element &g) const;
  Element power(const Element &g, long k) const;
  /// [g,h] = g⁻¹h⁻¹gh
  Element commutator(const Element &g, const Element &h) const;
  /// g^h = h⁻¹gh
  Element conjugate(const Element &g, const Element &h) const;

  Perm root(const Element &e) const;
  NodeForm decompose(const Element &e) const;
  /// Element with the given decomposition; sections become new atoms as needed.
  Element recompose(const NodeForm &form);
  /// A single letter acting like `e`, building the state automaton of `e`
  /// if it is not already one letter.
  Letter intern(const Element &e, const std::string &name = "");

  /// Right action on a string of 0-based point indices.
  std::vector<std::uint8_t> act(const Element &e, std::span<const std::uint8_t> s) const;
  /// Right action on a string of labels '1'..'7'.
  std::string act(const Element &e, const std::string &s) const;

  bool is_identity(const Element &e) const;
  bool equals(const Element &g, const Element &h) const;
  /// Least k ≤ max_pow with eᵏ = 1.
  std::optional<int> order_bounded(const Element &e, int max_pow) const;

  /// Digest of the action on all strings of length ≤ depth.
  std::uint64_t signature(const Element &e, int depth) const;
  Portrait portrait(const Element &e, int depth) const;

  std::string to_string(const Element &e) const;
  std::string to_string(Letter l) const;

  std::uint64_t state_budget() const { return state_budget_; }
  void set_state_budget(std::uint64_t budget) { state_budget_ = budget; }
  EngineStats stats() const;
  void clear_cache();

  // Letter-level primitives, exposed for the enumeration code.
  Perm letter_root(Letter l) const;
  Letter letter_section(Letter l, int index) const;
  Letter letter_inverse(Letter l) const;

 private:
  struct Atom {
    std::string name;
    Perm root;
    Perm inverse_root;
    std::array<Letter, kDegree> sections;
    std::array<Letter, kDegree> inverse_sections;
    bool involution = false;
  };

  struct WordHash {
    std::size_t operator()(const std::vector<Letter> &w) const noexcept;
  };
  using Word = std::vector<Letter>;

  void normalize_into(std::span<const Letter> in, Word &out) const;
  Perm word_root(const Word &w) const;
  void section_word(const Word &w, int index, Word &scratch, Word &out) const;
  bool is_identity_word(const Word &w) const;
  std::uint64_t digest(const Word &state, int depth) const;
  void portrait_into(const Word &state, int depth, Portrait &node) const;

  std::deque<Atom> atoms_;
  std::uint64_t state_budget_;
  std::vector<std::uint64_t> trivial_digest_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Word, bool, WordHash> identity_cache_;
  mutable std::atomic<std::uint64_t> identity_tests_{0};
  mutable std::atomic<std::uint64_t> cache_hits_{0};
  mutable std::atomic<std::uint64_t> states_visited_{0};
  mutable std::atomic<std::uint64_t> max_closure_{0};
};

/// Renders a portrait as nested JSON-compatible text; identical inputs give
/// identical bytes.
std::string portrait_to_json(const Portrait &p);
/// One line per vertex with a non-trivial root: "<address> <cycles>".
std::string portrait_to_text(const Portrait &p);

}  // namespace wilson
