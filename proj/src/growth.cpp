#include "wilson/growth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace wilson {

std::size_t ElementIndex::WordHash::operator()(const std::vector<Letter> &w) const noexcept {
  std::size_t h = w.size();
  for (Letter l : w) h = h * 0x100000001b3ull ^ l.code();
  return h;
}

ElementIndex::ElementIndex(const Engine &engine, bool exact_only, int initial_depth, int max_depth)
    : engine_(engine), exact_only_(exact_only), depth_(initial_depth), max_depth_(max_depth) {}

void ElementIndex::rehash() {
  buckets_.clear();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    digests_[i] = engine_.signature(members_[i], depth_);
    buckets_[digests_[i]].push_back(i);
  }
}

std::optional<std::size_t> ElementIndex::lookup(const Element &e, std::uint64_t digest) {
  if (auto it = by_word_.find(e.letters()); it != by_word_.end()) return it->second;
  if (exact_only_) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      ++exact_tests_;
      if (engine_.equals(e, members_[i])) return i;
    }
    return std::nullopt;
  }
  auto it = buckets_.find(digest);
  if (it == buckets_.end()) return std::nullopt;
  for (std::size_t i : it->second) {
    ++exact_tests_;
    if (engine_.equals(e, members_[i])) return i;
  }
  // Same digest, different element: the digest is too shallow.
  ++collisions_;
  if (depth_ < max_depth_) {
    ++depth_;
    rehash();
  }
  return std::nullopt;
}

std::optional<std::size_t> ElementIndex::find(const Element &e) {
  return lookup(e, exact_only_ ? 0 : engine_.signature(e, depth_));
}

std::optional<std::size_t> ElementIndex::find(const Element &e, std::uint64_t digest, int depth) {
  if (exact_only_) return lookup(e, 0);
  if (depth != depth_) digest = engine_.signature(e, depth_);
  return lookup(e, digest);
}

std::size_t ElementIndex::insert(const Element &e) {
  const std::size_t i = members_.size();
  members_.push_back(e);
  by_word_.emplace(e.letters(), i);
  if (!exact_only_) {
    digests_.push_back(engine_.signature(e, depth_));
    buckets_[digests_.back()].push_back(i);
  } else {
    digests_.push_back(0);
  }
  return i;
}

std::pair<std::size_t, bool> ElementIndex::find_or_insert(const Element &e) {
  if (auto hit = find(e)) return {*hit, false};
  return {insert(e), true};
}

std::string Ball::geodesic_string(std::size_t i) const {
  if (geodesic[i].empty()) return "ε";
  std::string out;
  for (std::size_t k = 0; k < geodesic[i].size(); ++k) {
    if (k) out += ' ';
    out += symbols[geodesic[i][k]];
  }
  return out;
}

namespace {

struct Candidate {
  std::size_t from;
  int symbol;
  Element product;
  std::uint64_t digest = 0;
};

// Products and digests are independent of each other, so they may be
// computed on several threads; merging stays sequential and ordered.
void prepare(const Engine &engine, const std::vector<Element> &generators,
             std::vector<Candidate> &cands, const std::vector<Element> &members, int depth,
             bool digests, int threads) {
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Candidate &c = cands[i];
      c.product = engine.multiply(members[c.from], generators[c.symbol]);
      if (digests) c.digest = engine.signature(c.product, depth);
    }
  };
  const std::size_t n = cands.size();
  const std::size_t t = std::max(1, threads);
  if (t == 1 || n < 64) {
    work(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t k = 0; k < t; ++k) {
    const std::size_t begin = k * chunk, end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  for (auto &th : pool) th.join();
}

}  // namespace

Ball enumerate_ball(const Engine &engine, const GeneratingSet &genset, int radius,
                    const BallOptions &options) {
  if (radius < 0) throw std::invalid_argument("ball radius must be non-negative");
  Ball ball;
  ball.genset = genset.name;
  ball.radius = radius;
  std::vector<Element> gens;
  for (const Generator &g : genset.symbols) {
    ball.symbols.push_back(g.symbol);
    ball.involution.push_back(g.involution);
    gens.push_back(g.element);
  }
  const std::size_t given = gens.size();
  ball.inverse_symbol.resize(given);
  for (std::size_t i = 0; i < given; ++i) {
    if (genset.symbols[i].involution) {
      ball.inverse_symbol[i] = static_cast<int>(i);
    } else {
      ball.inverse_symbol[i] = static_cast<int>(gens.size());
      ball.inverse_symbol.push_back(static_cast<int>(i));
      ball.symbols.push_back(genset.symbols[i].symbol + "^-1");
      ball.involution.push_back(false);
      gens.push_back(engine.inverse(genset.symbols[i].element));
    }
  }

  ElementIndex index(engine, options.exact_only, options.signature_depth);
  index.insert(engine.identity());
  ball.geodesic.push_back({});
  ball.edges.push_back(std::vector<long>(gens.size(), -1));
  std::vector<std::size_t> frontier{0};
  std::vector<Element> members{engine.identity()};

  auto expand = [&](const std::vector<std::size_t> &from, bool grow) {
    std::vector<Candidate> cands;
    cands.reserve(from.size() * gens.size());
    for (std::size_t m : from)
      for (int s = 0; s < static_cast<int>(gens.size()); ++s) cands.push_back({m, s, {}, 0});
    const int depth = index.depth();
    prepare(engine, gens, cands, members, depth, !options.exact_only, options.threads);
    std::vector<std::size_t> fresh;
    for (Candidate &c : cands) {
      auto hit = index.find(c.product, c.digest, depth);
      long target;
      if (hit) {
        target = static_cast<long>(*hit);
      } else if (grow) {
        target = static_cast<long>(index.insert(c.product));
        members.push_back(c.product);
        auto geo = ball.geodesic[c.from];
        geo.push_back(c.symbol);
        ball.geodesic.push_back(std::move(geo));
        ball.edges.push_back(std::vector<long>(gens.size(), -1));
        fresh.push_back(static_cast<std::size_t>(target));
      } else {
        target = -1;
      }
      if (options.with_edges) ball.edges[c.from][c.symbol] = target;
    }
    return fresh;
  };

  for (int r = 1; r <= radius; ++r) frontier = expand(frontier, true);
  if (options.with_edges && radius > 0) expand(frontier, false);
  if (options.with_edges && radius == 0) ball.edges[0].assign(gens.size(), -1);

  ball.members = std::move(members);
  ball.exact_tests = index.exact_tests();
  ball.collisions = index.collisions();
  ball.final_signature_depth = index.depth();
  return ball;
}

std::vector<std::uint64_t> ball_sizes(const Ball &ball) {
  std::vector<std::uint64_t> sizes(static_cast<std::size_t>(ball.radius) + 1, 0);
  for (const auto &g : ball.geodesic) ++sizes[g.size()];
  for (std::size_t r = 1; r < sizes.size(); ++r) sizes[r] += sizes[r - 1];
  return sizes;
}

std::vector<std::uint64_t> ball_sizes(const Engine &engine, const GeneratingSet &genset, int rmax,
                                      BallConvention convention, const BallOptions &options) {
  if (convention == BallConvention::Exactly) return exact_length_sizes(engine, genset, rmax);
  BallOptions opts = options;
  opts.with_edges = false;
  return ball_sizes(enumerate_ball(engine, genset, rmax, opts));
}

std::vector<std::uint64_t> exact_length_sizes(const Engine &engine, const GeneratingSet &genset,
                                              int rmax) {
  if (rmax < 0) throw std::invalid_argument("radius must be non-negative");
  std::vector<Element> gens;
  for (const Generator &g : genset.symbols) {
    gens.push_back(g.element);
    if (!g.involution) gens.push_back(engine.inverse(g.element));
  }
  std::vector<std::uint64_t> sizes{1};
  std::vector<Element> layer{engine.identity()};
  for (int r = 1; r <= rmax; ++r) {
    ElementIndex index(engine);
    for (const Element &g : layer)
      for (const Element &s : gens) index.find_or_insert(engine.multiply(g, s));
    layer.clear();
    for (std::size_t i = 0; i < index.size(); ++i) layer.push_back(index.at(i));
    sizes.push_back(layer.size());
  }
  return sizes;
}

std::vector<GrowthRow> growth_estimates(const std::vector<std::uint64_t> &sizes) {
  std::vector<GrowthRow> rows;
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    GrowthRow row;
    row.radius = static_cast<int>(r);
    row.ball_size = sizes[r];
    // Exact-length counts need not be nested; a drop is reported as an empty sphere.
    row.sphere_size = r == 0 ? sizes[0] : (sizes[r] > sizes[r - 1] ? sizes[r] - sizes[r - 1] : 0);
    if (r > 0) {
      row.estimate_root = std::pow(static_cast<double>(sizes[r]), 1.0 / static_cast<double>(r));
      if (rows.back().sphere_size > 0)
        row.estimate_ratio =
            static_cast<double>(row.sphere_size) / static_cast<double>(rows.back().sphere_size);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::pair<int, int>> submultiplicativity_violations(
    const std::vector<std::uint64_t> &sizes) {
  std::vector<std::pair<int, int>> bad;
  const int top = static_cast<int>(sizes.size()) - 1;
  for (int n = 0; n <= top; ++n)
    for (int m = 0; n + m <= top; ++m)
      if (sizes[n + m] > sizes[n] * sizes[m]) bad.emplace_back(n, m);
  return bad;
}

std::vector<IWord> geodesic_iwords(const Ball &ball) {
  if (ball.symbols.size() != 3) throw std::invalid_argument("geodesic words need three symbols");
  std::vector<IWord> out;
  out.reserve(ball.geodesic.size());
  for (const auto &g : ball.geodesic) {
    IWord w;
    for (int s : g) w.push_back(static_cast<std::uint8_t>(s));
    out.push_back(std::move(w));
  }
  return out;
}

WordPartition word_partition(const Engine &engine, const GeneratingSet &genset, int radius) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  if (genset.size() != 3) throw std::invalid_argument("word partitions need three generators");
  WordPartition part;
  part.radius = radius;
  ElementIndex index(engine);
  std::vector<std::size_t> rep;  // class -> first word index
  std::vector<Element> layer{engine.identity()};
  std::vector<IWord> layer_words{IWord{}};

  auto record = [&](const IWord &w, const Element &e) {
    auto [k, fresh] = index.find_or_insert(e);
    if (fresh) rep.push_back(part.words.size());
    part.class_of.push_back(rep[k]);
    part.words.push_back(w);
  };
  record(IWord{}, engine.identity());
  for (int r = 1; r <= radius; ++r) {
    std::vector<Element> next;
    std::vector<IWord> next_words;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      for (std::uint8_t s = 0; s < 3; ++s) {
        if (!layer_words[i].empty() && layer_words[i].back() == s) continue;
        IWord w = layer_words[i];
        w.push_back(s);
        Element e = engine.multiply(layer[i], genset.symbols[s].element);
        record(w, e);
        next.push_back(std::move(e));
        next_words.push_back(std::move(w));
      }
    }
    layer = std::move(next);
    layer_words = std::move(next_words);
  }
  part.class_count = rep.size();
  return part;
}

bool partitions_equal(const WordPartition &p, const WordPartition &q) {
  if (p.radius != q.radius) throw std::invalid_argument("partitions over different radii");
  return p.class_of == q.class_of;
}

LocalIsoResult find_min_n_local_iso(Catalog &catalog, int radius, int max_n) {
  if (radius < 1) throw std::invalid_argument("local isomorphism search needs R >= 1");
  LocalIsoResult res;
  res.radius = radius;
  res.max_n = max_n;
  // All families are registered before any partition is computed.
  const GeneratingSet &tilde = catalog.tilde();
  for (int n = 1; n <= max_n; ++n) catalog.S(n);
  const Engine &engine = catalog.engine();
  const WordPartition target = word_partition(engine, tilde, radius);
  res.tilde_classes = target.class_count;
  for (int n = 1; n <= max_n; ++n) {
    const bool same = partitions_equal(target, word_partition(engine, catalog.S(n), radius));
    res.agrees.push_back(same);
    if (same) {
      res.n = n;
      break;
    }
  }
  return res;
}

std::optional<int> first_partition_difference(const Engine &engine, const GeneratingSet &p,
                                              const GeneratingSet &q, int cap) {
  for (int r = 0; r <= cap; ++r)
    if (!partitions_equal(word_partition(engine, p, r), word_partition(engine, q, r))) return r;
  return std::nullopt;
}

namespace {

// All words over `alphabet` letters of length ≤ max_len, in (length, lex)
// order, with their elements.
void for_each_word(const Engine &engine, const std::vector<Element> &letters, int max_len,
                   const std::function<void(const std::vector<int> &, const Element &)> &visit) {
  std::vector<std::vector<int>> words{{}};
  std::vector<Element> elems{engine.identity()};
  visit(words[0], elems[0]);
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> nw;
    std::vector<Element> ne;
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (int s = 0; s < static_cast<int>(letters.size()); ++s) {
        auto w = words[i];
        w.push_back(s);
        Element e = engine.multiply(elems[i], letters[s]);
        visit(w, e);
        nw.push_back(std::move(w));
        ne.push_back(std::move(e));
      }
    }
    words = std::move(nw);
    elems = std::move(ne);
  }
}

std::string spell(const std::vector<int> &w, const std::string &alphabet) {
  if (w.empty()) return "e";
  std::string s;
  for (int l : w) s += alphabet[l];
  return s;
}

}  // namespace

FreeMonoidReport free_monoid_check(Catalog &catalog, const FreeQuadruple &q, int length,
                                   int refinement_length) {
  if (length < 1) throw std::invalid_argument("free-monoid check needs L >= 1");
  const Engine &engine = catalog.engine();
  FreeMonoidReport rep;
  rep.u = q.u;
  rep.v = q.v;
  rep.length = length;
  rep.expected_distinct = (1ull << (length + 1)) - 1;

  {
    ElementIndex index(engine);
    std::vector<std::vector<int>> first_word;
    for_each_word(engine, {q.a, q.d}, length, [&](const std::vector<int> &w, const Element &e) {
      auto [k, fresh] = index.find_or_insert(e);
      if (fresh) {
        first_word.push_back(w);
      } else if (rep.counterexample.empty()) {
        rep.counterexample = spell(first_word[k], "ad") + " = " + spell(w, "ad");
      }
    });
    rep.distinct = index.size();
    rep.distinct_ok = rep.distinct == rep.expected_distinct;
  }

  rep.refinement_length = refinement_length;
  {
    ElementIndex index(engine);
    std::vector<std::vector<int>> image_of_class;
    bool ok = true;
    for_each_word(engine, {q.a, q.b, q.c, q.d}, refinement_length,
                  [&](const std::vector<int> &w, const Element &e) {
                    ++rep.refinement_words;
                    std::vector<int> image = w;
                    for (int &l : image) l = (l == 1) ? 0 : (l == 2 ? 3 : l);  // b→a, c→d
                    auto [k, fresh] = index.find_or_insert(e);
                    if (fresh) {
                      image_of_class.push_back(image);
                    } else if (image_of_class[k] != image && ok) {
                      ok = false;
                      if (rep.counterexample.empty())
                        rep.counterexample = "equal in W but not under a=b,c=d: " +
                                             spell(w, "abcd") + " vs image " +
                                             spell(image_of_class[k], "abcd");
                    }
                  });
    rep.refinement_ok = ok;
  }
  return rep;
}

}  // namespace wilson
