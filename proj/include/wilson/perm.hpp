#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wilson {

inline constexpr int kDegree = 7;

/// A point of the Fano plane, labelled 1..7.
class Point {
 public:
  constexpr explicit Point(int label) : label_(label) {
    if (label < 1 || label > kDegree)
      throw std::out_of_range("point label must lie in 1..7");
  }
  static constexpr Point from_index(int index) { return Point(index + 1); }

  constexpr int label() const { return label_; }
  constexpr int index() const { return label_ - 1; }

  constexpr auto operator<=>(const Point &) const = default;

 private:
  int label_;
};

/// Bijection of the seven points, stored as an image table.
///
/// Permutations act on the right: p·(gh) = (p·g)·h. Ordering is
/// lexicographic on the image sequence, which is the canonical order used
/// whenever an element has to be picked from a set.
class Perm {
 public:
  constexpr Perm() : images_{0, 1, 2, 3, 4, 5, 6} {}

  /// Throws std::invalid_argument unless `images` (0-based) is a bijection.
  static Perm from_images(std::span<const int> images);
  /// Parses cycle notation with 1-based labels, e.g. "(1 5)(3 7)" or "(1,5)(3,7)".
  static Perm from_cycles(const std::string &cycles);

  static Perm unpack(std::uint32_t code);
  std::uint32_t pack() const;

  int image_index(int index) const { return images_[index]; }
  Point operator()(Point p) const { return Point::from_index(images_[p.index()]); }

  bool is_identity() const { return *this == Perm(); }
  Perm inverse() const;
  int order() const;

  /// Canonical cycle rendering, e.g. "(1 5)(3 7)"; identity renders as "()".
  std::string to_cycles() const;

  const std::array<std::uint8_t, kDegree> &images() const { return images_; }

  auto operator<=>(const Perm &) const = default;

 private:
  friend Perm compose(const Perm &p, const Perm &q);
  std::array<std::uint8_t, kDegree> images_;
};

/// Apply `p` first, then `q`.
Perm compose(const Perm &p, const Perm &q);
inline Perm operator*(const Perm &p, const Perm &q) { return compose(p, q); }

/// Commutator [g,h] = g⁻¹h⁻¹gh.
Perm commutator(const Perm &g, const Perm &h);

/// A finite permutation group, stored as its sorted element list.
class PermGroup {
 public:
  /// Breadth-first closure of `gens` under right multiplication.
  static PermGroup closure(std::span<const Perm> gens);
  static PermGroup trivial();

  std::size_t size() const { return elements_.size(); }
  const std::vector<Perm> &elements() const { return elements_; }
  const std::vector<Perm> &generators() const { return generators_; }
  bool contains(const Perm &p) const;
  bool is_abelian() const;

  bool operator==(const PermGroup &other) const { return elements_ == other.elements_; }

 private:
  std::vector<Perm> elements_;  // sorted
  std::vector<Perm> generators_;
};

bool is_perfect(const PermGroup &group);
bool is_simple(const PermGroup &group);
bool is_two_transitive(const PermGroup &group);

/// Size of the orbit of the ordered pair (p, q).
std::size_t pair_orbit_size(const PermGroup &group, Point p, Point q);

/// All g with p·g = q and q·g = p, in canonical order.
std::vector<Perm> find_swappers(const PermGroup &group, Point p, Point q);

/// Least g with fix·g = fix and move·g ≠ move, if any.
std::optional<Perm> find_fix_move(const PermGroup &group, Point fix, Point move);

/// The three reflections generating PSL(3,2).
namespace fano {
Perm x();
Perm y();
Perm z();
const PermGroup &psl32();
}  // namespace fano

}  // namespace wilson
