#include "wilson/perm.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

namespace wilson {

Perm Perm::from_images(std::span<const int> images) {
  if (images.size() != kDegree)
    throw std::invalid_argument("permutation needs exactly 7 images");
  Perm p;
  std::array<bool, kDegree> seen{};
  for (int i = 0; i < kDegree; ++i) {
    int v = images[i];
    if (v < 0 || v >= kDegree || seen[v])
      throw std::invalid_argument("image table is not a bijection of 7 points");
    seen[v] = true;
    p.images_[i] = static_cast<std::uint8_t>(v);
  }
  return p;
}

Perm Perm::from_cycles(const std::string &cycles) {
  std::array<int, kDegree> images{0, 1, 2, 3, 4, 5, 6};
  std::vector<int> cycle;
  bool open = false;
  auto flush = [&] {
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    cycle.clear();
  };
  std::array<bool, kDegree> used{};
  for (char ch : cycles) {
    if (ch == '(') {
      if (open) throw std::invalid_argument("nested '(' in cycle notation");
      open = true;
    } else if (ch == ')') {
      if (!open) throw std::invalid_argument("unbalanced ')' in cycle notation");
      open = false;
      flush();
    } else if (ch >= '1' && ch <= '7') {
      if (!open) throw std::invalid_argument("point outside a cycle");
      int idx = ch - '1';
      if (used[idx]) throw std::invalid_argument("point repeated in cycle notation");
      used[idx] = true;
      cycle.push_back(idx);
    } else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      continue;
    } else {
      throw std::invalid_argument(std::string("unexpected character in cycle notation: ") + ch);
    }
  }
  if (open) throw std::invalid_argument("unterminated cycle");
  return from_images(images);
}

std::uint32_t Perm::pack() const {
  std::uint32_t code = 0;
  for (int i = kDegree - 1; i >= 0; --i) code = (code << 3) | images_[i];
  return code;
}

Perm Perm::unpack(std::uint32_t code) {
  Perm p;
  for (int i = 0; i < kDegree; ++i) {
    p.images_[i] = static_cast<std::uint8_t>(code & 7u);
    code >>= 3;
  }
  return p;
}

Perm Perm::inverse() const {
  Perm r;
  for (int i = 0; i < kDegree; ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

int Perm::order() const {
  Perm acc = *this;
  int k = 1;
  while (!acc.is_identity()) {
    acc = acc * *this;
    ++k;
  }
  return k;
}

std::string Perm::to_cycles() const {
  std::string out;
  std::array<bool, kDegree> done{};
  for (int i = 0; i < kDegree; ++i) {
    if (done[i] || images_[i] == i) continue;
    out += '(';
    int j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += ' ';
      out += static_cast<char>('1' + j);
      first = false;
      j = images_[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm compose(const Perm &p, const Perm &q) {
  Perm r;
  for (int i = 0; i < kDegree; ++i) r.images_[i] = q.images_[p.images_[i]];
  return r;
}

Perm commutator(const Perm &g, const Perm &h) {
  return g.inverse() * h.inverse() * g * h;
}

PermGroup PermGroup::closure(std::span<const Perm> gens) {
  PermGroup group;
  group.generators_.assign(gens.begin(), gens.end());
  std::set<Perm> seen{Perm()};
  std::deque<Perm> queue{Perm()};
  while (!queue.empty()) {
    Perm g = queue.front();
    queue.pop_front();
    for (const Perm &s : gens) {
      Perm h = g * s;
      if (seen.insert(h).second) queue.push_back(h);
    }
  }
  group.elements_.assign(seen.begin(), seen.end());
  return group;
}

PermGroup PermGroup::trivial() { return closure(std::span<const Perm>{}); }

bool PermGroup::contains(const Perm &p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

bool PermGroup::is_abelian() const {
  for (const Perm &g : elements_)
    for (const Perm &h : elements_)
      if (g * h != h * g) return false;
  return true;
}

bool is_perfect(const PermGroup &group) {
  std::set<Perm> commutators;
  for (const Perm &g : group.elements())
    for (const Perm &h : group.elements()) commutators.insert(commutator(g, h));
  std::vector<Perm> gens(commutators.begin(), commutators.end());
  return PermGroup::closure(gens).size() == group.size();
}

namespace {

PermGroup normal_closure(const PermGroup &group, const Perm &g) {
  std::set<Perm> conjugates;
  for (const Perm &h : group.elements()) conjugates.insert(h.inverse() * g * h);
  std::vector<Perm> gens(conjugates.begin(), conjugates.end());
  return PermGroup::closure(gens);
}

}  // namespace

bool is_simple(const PermGroup &group) {
  if (group.size() == 1) return false;
  for (const Perm &g : group.elements()) {
    if (g.is_identity()) continue;
    if (normal_closure(group, g).size() != group.size()) return false;
  }
  return true;
}

std::size_t pair_orbit_size(const PermGroup &group, Point p, Point q) {
  std::set<std::pair<int, int>> orbit;
  for (const Perm &g : group.elements()) orbit.emplace(g(p).label(), g(q).label());
  return orbit.size();
}

bool is_two_transitive(const PermGroup &group) {
  return pair_orbit_size(group, Point(1), Point(2)) == kDegree * (kDegree - 1);
}

std::vector<Perm> find_swappers(const PermGroup &group, Point p, Point q) {
  if (p == q) throw std::invalid_argument("find_swappers needs distinct points");
  std::vector<Perm> out;
  for (const Perm &g : group.elements())
    if (g(p) == q && g(q) == p) out.push_back(g);
  return out;
}

std::optional<Perm> find_fix_move(const PermGroup &group, Point fix, Point move) {
  if (fix == move) throw std::invalid_argument("find_fix_move needs distinct points");
  for (const Perm &g : group.elements())
    if (g(fix) == fix && g(move) != move) return g;
  return std::nullopt;
}

namespace fano {

Perm x() { return Perm::from_cycles("(1 5)(3 7)"); }
Perm y() { return Perm::from_cycles("(2 3)(6 7)"); }
Perm z() { return Perm::from_cycles("(4 6)(5 7)"); }

const PermGroup &psl32() {
  static const PermGroup group = [] {
    std::array<Perm, 3> gens{x(), y(), z()};
    return PermGroup::closure(gens);
  }();
  return group;
}

}  // namespace fano

}  // namespace wilson
