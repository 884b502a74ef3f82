#pragma once

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wilson/engine.hpp"
#include "wilson/perm.hpp"

namespace wilson {

struct Generator {
  std::string symbol;
  Element element;
  bool involution = false;
};

/// Ordered, named generators. `level` is n for Sₙ and 0 otherwise.
struct GeneratingSet {
  std::string name;
  std::vector<Generator> symbols;
  int level = 0;

  std::size_t size() const { return symbols.size(); }
  /// Index of `symbol`, or -1.
  int find(const std::string &symbol) const;
};

/// Output of the free-monoid construction: the swapper pair, the four
/// products ūu, ūv, v̄u, v̄v and their decompositions.
struct FreeQuadruple {
  Perm u, v;
  Element a, b, c, d;
  std::array<NodeForm, 4> forms;
  Perm sigma, tau;  // roots of a and b with the transposition (1 2) removed

  bool roots_swap_12 = false;
  bool sections_match = false;
  bool shared_roots = false;  // a,c share σ; b,d share τ
  bool sigma_ne_tau = false;
  bool decompositions_hold() const {
    return roots_swap_12 && sections_match && shared_roots && sigma_ne_tau;
  }
};

enum class Relation { Equal, NotEqual, IsIdentity, NotIdentity };
std::string to_string(Relation r);

struct CatalogClaim {
  std::string id;
  std::string anchor;  // the identity in readable form, for reports
  Relation relation = Relation::Equal;
  Element lhs;
  std::variant<std::monostate, Element, NodeForm> rhs;
};

struct ClaimVerdict {
  std::string id;
  std::string anchor;
  Relation relation = Relation::Equal;
  bool pass = false;
  std::string detail;
  std::uint64_t identity_tests = 0;
};

/// Builds every named generator family on top of one Engine. Families are
/// built once and cached; all of them are registered at first use.
class Catalog {
 public:
  explicit Catalog(Engine &engine);

  Engine &engine() { return engine_; }

  /// ā = ⟨ā, a, 1,1,1,1,1⟩; the identity for a = 1.
  Element abar(const Perm &a);

  /// (a,b,c) ↦ (⟨1,1,1,a,1,1,1⟩x, ⟨b,1,…⟩y, ⟨1,c,1,…⟩z). Throws
  /// std::invalid_argument if an input is not an involution.
  std::array<Element, 3> prime_triple(const std::array<Element, 3> &t,
                                      const std::array<std::string, 3> &names);

  const GeneratingSet &base();
  const GeneratingSet &S(int n);
  const GeneratingSet &tilde();
  /// Symbols a,b,c,d over the canonical swapper pair.
  const GeneratingSet &free_set();

  FreeQuadruple free_quadruple();
  FreeQuadruple free_quadruple(const Perm &u, const Perm &v);

  std::vector<CatalogClaim> identity_catalog();
  ClaimVerdict check(const CatalogClaim &claim) const;

  /// Resolves "base", "S:n", "tilde" or "free".
  const GeneratingSet &by_name(const std::string &selector);

 private:
  Engine &engine_;
  std::map<Perm, Element> abar_;
  std::optional<GeneratingSet> base_;
  std::deque<GeneratingSet> s_;  // s_[n-1] = Sₙ; deque keeps references stable
  std::optional<GeneratingSet> tilde_;
  std::optional<GeneratingSet> free_;
  std::map<std::pair<Perm, Perm>, FreeQuadruple> quadruples_;
  std::optional<std::vector<CatalogClaim>> claims_;
};

/// Independent evaluation of ā on a string of labels '1'..'7': find the
/// first 𝟚 preceded only by 𝟙s and apply a to the next letter.
std::string abar_act_prefix(const std::string &s, const Perm &a);

/// NodeForm with trivial sections except those given.
NodeForm node_form(const Engine &engine, const Perm &root,
                   const std::array<std::optional<Element>, kDegree> &sections);

}  // namespace wilson
