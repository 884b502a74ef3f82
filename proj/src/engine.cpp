#include "wilson/engine.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace wilson {

namespace {

constexpr int kMaxSignatureDepth = 32;
constexpr std::size_t kCacheLimit = 1u << 22;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over a running combine
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 31;
  return h;
}

constexpr std::uint64_t kEmptyStringDigest = 0x51ed270b27a3c4f1ull;

std::uint64_t combine_vertex(std::uint32_t root_code,
                             const std::array<std::uint64_t, kDegree> &children) {
  std::uint64_t h = mix(0x2545f4914f6cdd1dull, root_code);
  for (std::uint64_t c : children) h = mix(h, c);
  return h;
}

}  // namespace

std::size_t Engine::WordHash::operator()(const std::vector<Letter> &w) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ w.size();
  for (Letter l : w) h = mix(h, l.code());
  return static_cast<std::size_t>(h);
}

Engine::Engine(std::uint64_t state_budget) : state_budget_(state_budget) {
  trivial_digest_.resize(kMaxSignatureDepth + 1);
  trivial_digest_[0] = kEmptyStringDigest;
  for (int d = 1; d <= kMaxSignatureDepth; ++d) {
    std::array<std::uint64_t, kDegree> children;
    children.fill(trivial_digest_[d - 1]);
    trivial_digest_[d] = combine_vertex(Perm().pack(), children);
  }
}

AtomId Engine::define_atom(std::string name, const Perm &root,
                           const std::array<Letter, kDegree> &sections, bool involution) {
  const auto id = static_cast<AtomId>(atoms_.size());
  Atom atom;
  atom.name = std::move(name);
  atom.root = root;
  atom.inverse_root = root.inverse();
  for (int p = 0; p < kDegree; ++p) {
    Letter s = sections[p];
    if (s.is_self()) {
      s = Letter::atom(id);
    } else if (s.is_atom() && s.atom_id() >= id) {
      throw std::invalid_argument("atom '" + atom.name + "' refers to an undefined atom");
    }
    atom.sections[p] = s;
  }
  atoms_.push_back(std::move(atom));
  Atom &stored = atoms_.back();
  // The inverse sections may refer to this atom, so they are filled after it
  // is registered: (g⁻¹)_q = (g_{q·a⁻¹})⁻¹.
  for (int q = 0; q < kDegree; ++q)
    stored.inverse_sections[q] = letter_inverse(stored.sections[stored.inverse_root.image_index(q)]);

  if (involution) {
    // Checked with the flag still off so normalization cannot assume the answer.
    Element g = this->atom(id);
    if (!is_identity(multiply(g, g))) {
      std::string bad = stored.name;
      atoms_.pop_back();
      clear_cache();
      throw std::invalid_argument("atom '" + bad + "' is not an involution");
    }
    stored.involution = true;
    for (int q = 0; q < kDegree; ++q)
      stored.inverse_sections[q] = letter_inverse(stored.sections[stored.inverse_root.image_index(q)]);
    clear_cache();
  }
  return id;
}

Perm Engine::letter_root(Letter l) const {
  if (l.is_perm()) return l.as_perm();
  const Atom &a = atoms_[l.atom_id()];
  return l.inverted() ? a.inverse_root : a.root;
}

Letter Engine::letter_section(Letter l, int index) const {
  if (l.is_perm()) return Letter::identity();
  const Atom &a = atoms_[l.atom_id()];
  return l.inverted() ? a.inverse_sections[index] : a.sections[index];
}

Letter Engine::letter_inverse(Letter l) const {
  if (l.is_perm()) return Letter::perm(l.as_perm().inverse());
  if (atoms_[l.atom_id()].involution) return Letter::atom(l.atom_id());
  return Letter::atom(l.atom_id(), !l.inverted());
}

void Engine::normalize_into(std::span<const Letter> in, Word &out) const {
  out.clear();
  for (Letter l : in) {
    if (l.is_identity()) continue;
    if (l.is_atom() && l.inverted() && atoms_[l.atom_id()].involution) l = Letter::atom(l.atom_id());
    if (!out.empty()) {
      Letter top = out.back();
      if (top.is_perm() && l.is_perm()) {
        out.pop_back();
        Letter folded = Letter::perm(top.as_perm() * l.as_perm());
        if (!folded.is_identity()) out.push_back(folded);
        continue;
      }
      if (top.is_atom() && l.is_atom() && top.atom_id() == l.atom_id() &&
          (top.inverted() != l.inverted() || atoms_[l.atom_id()].involution)) {
        out.pop_back();
        continue;
      }
    }
    out.push_back(l);
  }
}

Element Engine::element(Letter l) const {
  Word w;
  normalize_into(std::span<const Letter>(&l, 1), w);
  return Element(std::move(w));
}

Element Engine::word(std::span<const Letter> letters) const {
  Word w;
  normalize_into(letters, w);
  return Element(std::move(w));
}

Element Engine::multiply(const Element &g, const Element &h) const {
  Word joined;
  joined.reserve(g.size() + h.size());
  joined.insert(joined.end(), g.letters().begin(), g.letters().end());
  joined.insert(joined.end(), h.letters().begin(), h.letters().end());
  return word(joined);
}

Element Engine::inverse(const Element &g) const {
  Word inv;
  inv.reserve(g.size());
  for (auto it = g.letters().rbegin(); it != g.letters().rend(); ++it)
    inv.push_back(letter_inverse(*it));
  return word(inv);
}

Element Engine::power(const Element &g, long k) const {
  Element base = k < 0 ? inverse(g) : g;
  unsigned long n = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  Element acc;
  while (n > 0) {
    if (n & 1u) acc = multiply(acc, base);
    base = multiply(base, base);
    n >>= 1;
  }
  return acc;
}

Element Engine::commutator(const Element &g, const Element &h) const {
  return multiply(multiply(inverse(g), inverse(h)), multiply(g, h));
}

Element Engine::conjugate(const Element &g, const Element &h) const {
  return multiply(multiply(inverse(h), g), h);
}

Perm Engine::word_root(const Word &w) const {
  Perm r;
  for (Letter l : w) r = r * letter_root(l);
  return r;
}

Perm Engine::root(const Element &e) const { return word_root(e.letters()); }

void Engine::section_word(const Word &w, int index, Word &scratch, Word &out) const {
  scratch.clear();
  int q = index;
  for (Letter l : w) {
    scratch.push_back(letter_section(l, q));
    q = letter_root(l).image_index(q);
  }
  normalize_into(scratch, out);
}

NodeForm Engine::decompose(const Element &e) const {
  NodeForm form;
  form.root = root(e);
  Word scratch;
  for (int p = 0; p < kDegree; ++p) {
    Word out;
    section_word(e.letters(), p, scratch, out);
    form.sections[p] = Element(std::move(out));
  }
  return form;
}

Letter Engine::intern(const Element &e, const std::string &name) {
  const Word &w = e.letters();
  if (w.empty()) return Letter::identity();
  if (w.size() == 1 && (w[0].is_perm() || !w[0].inverted())) return w[0];

  // State closure of e; every state that is not already a single letter
  // becomes a fresh atom.
  std::vector<Word> states{w};
  std::unordered_map<Word, std::size_t, WordHash> index{{w, 0}};
  std::vector<std::array<Word, kDegree>> sections;
  Word scratch;
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::array<Word, kDegree> secs;
    for (int p = 0; p < kDegree; ++p) {
      section_word(states[i], p, scratch, secs[p]);
      const Word &s = secs[p];
      bool single = s.empty() || (s.size() == 1 && (s[0].is_perm() || !s[0].inverted()));
      if (!single && !index.contains(s)) {
        if (states.size() >= state_budget_)
          throw ResourceError("state budget exceeded while interning " + to_string(e));
        index.emplace(s, states.size());
        states.push_back(s);
      }
    }
    sections.push_back(std::move(secs));
  }

  const auto base = static_cast<AtomId>(atoms_.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    Atom atom;
    atom.name = (i == 0 && !name.empty()) ? name : "{" + to_string(Element(states[i])) + "}";
    atom.root = word_root(states[i]);
    atom.inverse_root = atom.root.inverse();
    atoms_.push_back(std::move(atom));
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    Atom &atom = atoms_[base + i];
    for (int p = 0; p < kDegree; ++p) {
      const Word &s = sections[i][p];
      if (s.empty())
        atom.sections[p] = Letter::identity();
      else if (s.size() == 1 && (s[0].is_perm() || !s[0].inverted()))
        atom.sections[p] = s[0];
      else
        atom.sections[p] = Letter::atom(base + static_cast<AtomId>(index.at(s)));
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    Atom &atom = atoms_[base + i];
    for (int q = 0; q < kDegree; ++q)
      atom.inverse_sections[q] = letter_inverse(atom.sections[atom.inverse_root.image_index(q)]);
  }
  // Flag involutive states so that normalization can cancel their squares.
  bool changed = false;
  for (std::size_t i = 0; i < states.size(); ++i) {
    Element g = this->atom(base + static_cast<AtomId>(i));
    if (is_identity(multiply(g, g))) {
      atoms_[base + i].involution = true;
      changed = true;
    }
  }
  if (changed) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      Atom &atom = atoms_[base + i];
      for (int q = 0; q < kDegree; ++q)
        atom.inverse_sections[q] = letter_inverse(atom.sections[atom.inverse_root.image_index(q)]);
    }
    clear_cache();
  }
  return Letter::atom(base);
}

Element Engine::recompose(const NodeForm &form) {
  std::array<Letter, kDegree> secs;
  for (int p = 0; p < kDegree; ++p) secs[p] = intern(form.sections[p]);
  std::ostringstream name;
  name << "<";
  for (int p = 0; p < kDegree; ++p) name << (p ? "," : "") << to_string(form.sections[p]);
  name << ">";
  AtomId id = define_atom(name.str(), Perm(), secs, false);
  return multiply(atom(id), element(form.root));
}

std::vector<std::uint8_t> Engine::act(const Element &e, std::span<const std::uint8_t> s) const {
  std::vector<std::uint8_t> out(s.begin(), s.end());
  for (Letter l : e.letters()) {
    Letter cur = l;
    for (std::size_t i = 0; i < out.size() && !cur.is_identity(); ++i) {
      int q = out[i];
      out[i] = static_cast<std::uint8_t>(letter_root(cur).image_index(q));
      cur = letter_section(cur, q);
    }
  }
  return out;
}

std::string Engine::act(const Element &e, const std::string &s) const {
  std::vector<std::uint8_t> pts;
  pts.reserve(s.size());
  for (char c : s) {
    if (c < '1' || c > '7') throw std::invalid_argument("strings are over the labels 1..7");
    pts.push_back(static_cast<std::uint8_t>(c - '1'));
  }
  auto img = act(e, std::span<const std::uint8_t>(pts));
  std::string out;
  out.reserve(img.size());
  for (auto v : img) out += static_cast<char>('1' + v);
  return out;
}

bool Engine::is_identity(const Element &e) const { return is_identity_word(e.letters()); }

bool Engine::is_identity_word(const Word &w) const {
  identity_tests_.fetch_add(1, std::memory_order_relaxed);
  if (w.empty()) return true;
  if (!word_root(w).is_identity()) return false;
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = identity_cache_.find(w); it != identity_cache_.end()) {
      cache_hits_.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
  }

  // Closure under taking sections. Section words never gain atom letters,
  // so the closure is finite; e is trivial iff every state has trivial root.
  std::unordered_set<Word, WordHash> visited{w};
  std::vector<Word> queue{w};
  Word scratch, sec;
  bool trivial = true;
  for (std::size_t head = 0; head < queue.size() && trivial; ++head) {
    const Word cur = queue[head];
    for (int p = 0; p < kDegree; ++p) {
      section_word(cur, p, scratch, sec);
      if (sec.empty()) continue;
      if (!word_root(sec).is_identity()) {
        trivial = false;
        break;
      }
      if (visited.contains(sec)) continue;
      {
        std::lock_guard lock(cache_mutex_);
        if (auto it = identity_cache_.find(sec); it != identity_cache_.end()) {
          cache_hits_.fetch_add(1, std::memory_order_relaxed);
          if (!it->second) {
            trivial = false;
            break;
          }
          continue;
        }
      }
      if (visited.size() >= state_budget_) {
        throw ResourceError("identity test exceeded the state budget of " +
                            std::to_string(state_budget_) + " states on " +
                            to_string(Element(w)));
      }
      visited.insert(sec);
      queue.push_back(sec);
    }
  }

  states_visited_.fetch_add(visited.size(), std::memory_order_relaxed);
  std::uint64_t seen = max_closure_.load(std::memory_order_relaxed);
  while (visited.size() > seen &&
         !max_closure_.compare_exchange_weak(seen, visited.size(), std::memory_order_relaxed)) {
  }

  std::lock_guard lock(cache_mutex_);
  if (identity_cache_.size() + visited.size() > kCacheLimit) identity_cache_.clear();
  if (trivial) {
    for (const Word &v : visited) identity_cache_.emplace(v, true);
  } else {
    identity_cache_.emplace(w, false);
  }
  return trivial;
}

bool Engine::equals(const Element &g, const Element &h) const {
  if (g.letters() == h.letters()) return true;
  return is_identity(multiply(g, inverse(h)));
}

std::optional<int> Engine::order_bounded(const Element &e, int max_pow) const {
  if (max_pow < 1) throw std::invalid_argument("order_bounded needs max_pow >= 1");
  Element acc = e;
  for (int k = 1; k <= max_pow; ++k) {
    if (is_identity(acc)) return k;
    acc = multiply(acc, e);
  }
  return std::nullopt;
}

std::uint64_t Engine::digest(const Word &state, int depth) const {
  if (depth == 0) return kEmptyStringDigest;
  if (state.empty()) return trivial_digest_[depth];
  std::array<std::uint64_t, kDegree> children;
  Word child;
  for (int p = 0; p < kDegree; ++p) {
    child.clear();
    int q = p;
    for (Letter l : state) {
      Letter s = letter_section(l, q);
      if (!s.is_identity()) child.push_back(s);
      q = letter_root(l).image_index(q);
    }
    children[p] = digest(child, depth - 1);
  }
  return combine_vertex(word_root(state).pack(), children);
}

std::uint64_t Engine::signature(const Element &e, int depth) const {
  if (depth < 0) throw std::invalid_argument("signature depth must be non-negative");
  if (depth > kMaxSignatureDepth) throw std::invalid_argument("signature depth too large");
  return digest(e.letters(), depth);
}

void Engine::portrait_into(const Word &state, int depth, Portrait &node) const {
  node.root = word_root(state);
  if (depth == 0) return;
  node.children.resize(kDegree);
  Word child;
  for (int p = 0; p < kDegree; ++p) {
    child.clear();
    int q = p;
    for (Letter l : state) {
      Letter s = letter_section(l, q);
      if (!s.is_identity()) child.push_back(s);
      q = letter_root(l).image_index(q);
    }
    portrait_into(child, depth - 1, node.children[p]);
  }
}

Portrait Engine::portrait(const Element &e, int depth) const {
  if (depth < 0) throw std::invalid_argument("portrait depth must be non-negative");
  Portrait p;
  portrait_into(e.letters(), depth, p);
  return p;
}

std::string Engine::to_string(Letter l) const {
  if (l.is_perm()) return l.is_identity() ? "1" : l.as_perm().to_cycles();
  const std::string &name = atoms_.at(l.atom_id()).name;
  return l.inverted() ? name + "^-1" : name;
}

std::string Engine::to_string(const Element &e) const {
  if (e.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ' ';
    out += to_string(e.letters()[i]);
  }
  return out;
}

EngineStats Engine::stats() const {
  EngineStats s;
  s.identity_tests = identity_tests_.load();
  s.cache_hits = cache_hits_.load();
  s.states_visited = states_visited_.load();
  s.max_closure = max_closure_.load();
  return s;
}

void Engine::clear_cache() {
  std::lock_guard lock(cache_mutex_);
  identity_cache_.clear();
}

namespace {

void portrait_json(const Portrait &p, std::string &out) {
  out += "{\"root\":\"" + p.root.to_cycles() + "\"";
  if (!p.children.empty()) {
    out += ",\"children\":[";
    for (std::size_t i = 0; i < p.children.size(); ++i) {
      if (i) out += ',';
      portrait_json(p.children[i], out);
    }
    out += ']';
  }
  out += '}';
}

void portrait_text(const Portrait &p, std::string &address, std::string &out) {
  if (!p.root.is_identity())
    out += (address.empty() ? std::string("ε") : address) + " " + p.root.to_cycles() + "\n";
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    address.push_back(static_cast<char>('1' + i));
    portrait_text(p.children[i], address, out);
    address.pop_back();
  }
}

}  // namespace

std::string portrait_to_json(const Portrait &p) {
  std::string out;
  portrait_json(p, out);
  return out;
}

std::string portrait_to_text(const Portrait &p) {
  std::string out, address;
  portrait_text(p, address, out);
  return out;
}

}  // namespace wilson
