#include "wilson/report.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace wilson {

using ojson = nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

struct Suite {
  ojson claims = ojson::array();
  std::size_t failed = 0;

  void add(const std::string &id, const std::string &anchor, bool pass, ojson detail = nullptr) {
    ojson c;
    c["id"] = id;
    c["anchor"] = anchor;
    c["pass"] = pass;
    if (!detail.is_null()) c["detail"] = std::move(detail);
    claims.push_back(std::move(c));
    if (!pass) ++failed;
  }

  // A check that throws is recorded as a failure carrying the message.
  void guarded(const std::string &id, const std::string &anchor,
               const std::function<std::pair<bool, ojson>()> &body) {
    try {
      auto [pass, detail] = body();
      add(id, anchor, pass, std::move(detail));
    } catch (const std::exception &e) {
      add(id, anchor, false, std::string("error: ") + e.what());
    }
  }
};

ojson verdict_json(const ClaimVerdict &v) {
  ojson c;
  c["id"] = v.id;
  c["anchor"] = v.anchor;
  c["relation"] = to_string(v.relation);
  c["pass"] = v.pass;
  if (!v.detail.empty()) c["detail"] = v.detail;
  return c;
}

ojson free_monoid_entry(const FreeMonoidReport &r) {
  ojson c;
  c["u"] = r.u.to_cycles();
  c["v"] = r.v.to_cycles();
  c["length"] = r.length;
  c["expected_distinct"] = r.expected_distinct;
  c["distinct"] = r.distinct;
  c["refinement_length"] = r.refinement_length;
  c["refinement_words"] = r.refinement_words;
  c["refinement_ok"] = r.refinement_ok;
  c["pass"] = r.pass();
  if (!r.counterexample.empty()) c["counterexample"] = r.counterexample;
  return c;
}

ojson local_iso_entry(const LocalIsoResult &r) {
  ojson c;
  c["radius"] = r.radius;
  c["max_n"] = r.max_n;
  c["n"] = r.n ? ojson(*r.n) : ojson("not-found");
  c["tilde_classes"] = r.tilde_classes;
  c["agrees"] = r.agrees;
  return c;
}

std::vector<std::pair<Perm, Perm>> swapper_pairs() {
  const auto swappers = find_swappers(fano::psl32(), Point(1), Point(2));
  std::vector<std::pair<Perm, Perm>> pairs;
  for (const Perm &u : swappers)
    for (const Perm &v : swappers)
      if (u != v) pairs.emplace_back(u, v);
  return pairs;
}

}  // namespace

VerifyAllResult verify_all(std::uint64_t state_budget, int threads) {
  Engine engine(state_budget);
  Catalog catalog(engine);
  Suite s;

  const PermGroup &A = fano::psl32();
  s.add("A.order", "|<x,y,z>| = 168", A.size() == 168, A.size());
  s.add("A.perfect", "[A,A] = A", is_perfect(A));
  s.add("A.simple", "A has no proper nontrivial normal subgroup", is_simple(A));
  s.add("A.two-transitive", "A acts 2-transitively on {1,...,7}", is_two_transitive(A),
        pair_orbit_size(A, Point(1), Point(2)));
  {
    const std::vector<Perm> gens{fano::x() * fano::y(), fano::y() * fano::z(),
                                 fano::z() * fano::x()};
    s.add("A.products", "<xy,yz,zx> = A", PermGroup::closure(gens) == A);
  }

  for (const CatalogClaim &claim : catalog.identity_catalog()) {
    try {
      const ClaimVerdict v = catalog.check(claim);
      s.add("catalog." + v.id, v.anchor, v.pass,
            v.detail.empty() ? ojson(to_string(v.relation)) : ojson(v.detail));
    } catch (const std::exception &e) {
      s.add("catalog." + claim.id, claim.anchor, false, std::string("error: ") + e.what());
    }
  }

  s.guarded("abar.oracle", "abar acts on the first 2 after a run of 1s", [&] {
    std::vector<std::string> strings{""};
    for (std::size_t k = 0; k < strings.size(); ++k) {
      if (strings[k].size() == 4) continue;
      for (char ch = '1'; ch <= '7'; ++ch) strings.push_back(strings[k] + ch);
    }
    std::uint64_t cases = 0, bad = 0;
    ojson first = nullptr;
    for (const Perm &a : A.elements()) {
      const Element e = catalog.abar(a);
      for (const std::string &str : strings) {
        ++cases;
        if (engine.act(e, str) != abar_act_prefix(str, a)) {
          if (bad++ == 0) first = a.to_cycles() + " on \"" + str + "\"";
        }
      }
    }
    ojson d;
    d["cases"] = cases;
    d["mismatches"] = bad;
    if (!first.is_null()) d["first"] = first;
    return std::pair{bad == 0 && cases == 168ull * 2801ull, d};
  });

  s.guarded("lemma30.bound", "at most 30 reduced words of each length avoid Delta", [&] {
    const Lemma30Report r = verify_lemma30(40);
    ojson d;
    d["max_n"] = r.max_n;
    d["plateau_value"] = r.plateau_value;
    d["plateau_from"] = r.plateau_from;
    return std::pair{r.all_within_30 && r.within_reduced_total, d};
  });
  s.guarded("lemma30.small", "Delta-free counts for n = 1, 2, 3 are 3, 6, 9", [&] {
    const std::vector<std::uint64_t> c{count_delta_free(1), count_delta_free(2),
                                       count_delta_free(3)};
    return std::pair{c == std::vector<std::uint64_t>{3, 6, 9}, ojson(c)};
  });
  s.guarded("lemma30.naive", "automaton and naive Delta-free counts agree for n <= 15", [&] {
    int first_bad = 0;
    for (int n = 1; n <= 15 && !first_bad; ++n)
      if (count_delta_free(n) != count_delta_free_naive(n)) first_bad = n;
    return std::pair{first_bad == 0, first_bad ? ojson(first_bad) : ojson(nullptr)};
  });

  s.guarded("free.decompositions", "a, b, c, d swap 1 and 2 with sigma != tau", [&] {
    ojson d = ojson::array();
    bool ok = true;
    for (const auto &[u, v] : swapper_pairs()) {
      const FreeQuadruple q = catalog.free_quadruple(u, v);
      ok = ok && q.decompositions_hold();
      if (!q.decompositions_hold()) d.push_back(u.to_cycles() + " " + v.to_cycles());
    }
    return std::pair{ok, d.empty() ? ojson(nullptr) : d};
  });
  s.guarded("free.monoid", "{a,d}-words of length <= 8 give 511 distinct elements", [&] {
    ojson d = ojson::array();
    bool ok = true;
    for (const auto &[u, v] : swapper_pairs()) {
      const FreeMonoidReport r = free_monoid_check(catalog, catalog.free_quadruple(u, v), 8, 3);
      ok = ok && r.pass();
      d.push_back(free_monoid_entry(r));
    }
    return std::pair{ok, d};
  });

  s.guarded("localiso.R1", "S~ and S_1 agree on the ball of radius 1", [&] {
    const LocalIsoResult r = find_min_n_local_iso(catalog, 1, 4);
    return std::pair{r.n == 1, local_iso_entry(r)};
  });
  for (int R : {2, 3}) {
    s.guarded("localiso.R" + std::to_string(R),
              "S~ and some S_n with n <= 4 agree on the ball of radius " + std::to_string(R),
              [&] {
                const LocalIsoResult r = find_min_n_local_iso(catalog, R, 4);
                bool ok = r.n.has_value();
                if (ok)
                  ok = partitions_equal(word_partition(engine, catalog.tilde(), R),
                                        word_partition(engine, catalog.S(*r.n), R));
                return std::pair{ok, local_iso_entry(r)};
              });
  }

  for (const char *sel : {"S:1", "S:2", "tilde"}) {
    s.guarded(std::string("growth.") + sel, "#B(n+m) <= #B(n) #B(m) for n + m <= 10", [&] {
      BallOptions opts;
      opts.with_edges = false;
      opts.threads = threads;
      const auto sizes = ball_sizes(enumerate_ball(engine, catalog.by_name(sel), 10, opts));
      BallOptions exact = opts;
      exact.exact_only = true;
      const auto oracle = ball_sizes(enumerate_ball(engine, catalog.by_name(sel), 6, exact));
      const bool agree = std::equal(oracle.begin(), oracle.end(), sizes.begin());
      ojson d;
      d["sizes"] = sizes;
      d["exact_oracle_agrees"] = agree;
      return std::pair{agree && submultiplicativity_violations(sizes).empty(), d};
    });
  }

  s.guarded("bound.geodesics", "geodesics of S_2 with <= eta n Delta-occurrences obey the finite bound",
            [&] {
              BallOptions opts;
              opts.with_edges = false;
              opts.threads = threads;
              const Ball ball = enumerate_ball(engine, catalog.S(2), 10, opts);
              const auto words = geodesic_iwords(ball);
              bool ok = true;
              for (double eta : {0.1, 0.2, 0.3})
                for (const DeltaStatsRow &row : geodesic_delta_stats(words, eta, 10))
                  ok = ok && row.within_bound;
              return std::pair{ok, ojson(nullptr)};
            });

  s.guarded("lambda.sequence", "Lambda_1 = 2 and 1 < Lambda_{n+1} < Lambda_n", [&] {
    const auto seq = lambda_sequence(500);
    bool ok = seq.front().lambda == 2.0;
    int below = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const EtaStep &st = seq[i];
      ok = ok && st.lambda_next > 1.0 && st.lambda_next < st.lambda && st.residual <= 1e-12;
      if (!below && st.lambda < 1.05) below = st.n;
    }
    ok = ok && below > 0;
    ok = ok && seq[0].eta > 0.08 && seq[0].eta < 0.10;
    ok = ok && seq[0].lambda_next > 1.85 && seq[0].lambda_next < 1.90;
    ojson d;
    d["eta_1"] = format_double(seq[0].eta);
    d["lambda_2"] = format_double(seq[0].lambda_next);
    d["first_below_1.05"] = below;
    return std::pair{ok, d};
  });

  VerifyAllResult res;
  res.claims = s.claims.size();
  res.failed = s.failed;
  res.pass = s.failed == 0;
  ojson doc;
  doc["pass"] = res.pass;
  doc["claims_total"] = res.claims;
  doc["claims_failed"] = res.failed;
  doc["claims"] = std::move(s.claims);
  res.json = doc.dump(2) + "\n";
  return res;
}

std::string catalog_json(Catalog &catalog) {
  ojson doc;
  ojson arr = ojson::array();
  bool all = true;
  for (const CatalogClaim &claim : catalog.identity_catalog()) {
    const ClaimVerdict v = catalog.check(claim);
    all = all && v.pass;
    arr.push_back(verdict_json(v));
  }
  doc["pass"] = all;
  doc["claims"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string free_monoid_json(const std::vector<FreeMonoidReport> &reports) {
  ojson doc;
  bool all = true;
  ojson arr = ojson::array();
  for (const auto &r : reports) {
    all = all && r.pass();
    arr.push_back(free_monoid_entry(r));
  }
  doc["pass"] = all;
  doc["pairs"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string local_iso_json(const std::vector<LocalIsoResult> &results) {
  ojson doc;
  bool all = true;
  ojson arr = ojson::array();
  for (const auto &r : results) {
    all = all && r.n.has_value();
    arr.push_back(local_iso_entry(r));
  }
  doc["pass"] = all;
  doc["results"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string growth_csv(const std::vector<GrowthRow> &rows) {
  std::ostringstream out;
  out << "radius,ball_size,sphere_size,estimate_root,estimate_ratio\n";
  for (const GrowthRow &r : rows)
    out << r.radius << ',' << r.ball_size << ',' << r.sphere_size << ','
        << format_double(r.estimate_root) << ',' << format_double(r.estimate_ratio) << '\n';
  return out.str();
}

std::string ball_csv(const Ball &ball) {
  std::ostringstream out;
  out << "index,length,geodesic\n";
  for (std::size_t i = 0; i < ball.size(); ++i)
    out << i << ',' << ball.geodesic[i].size() << ',' << ball.geodesic_string(i) << '\n';
  return out.str();
}

std::string ball_dot(const Ball &ball) {
  std::ostringstream out;
  out << "digraph ball {\n";
  for (std::size_t i = 0; i < ball.size(); ++i)
    out << "  n" << i << " [label=\"" << ball.geodesic_string(i) << "\"];\n";
  for (std::size_t i = 0; i < ball.edges.size(); ++i) {
    for (std::size_t s = 0; s < ball.symbols.size(); ++s) {
      // Inverse symbols duplicate the reverse of a given edge.
      if (static_cast<std::size_t>(ball.inverse_symbol[s]) < s) continue;
      const long j = ball.edges[i][s];
      if (j < 0) continue;
      if (ball.involution[s]) {
        if (static_cast<std::size_t>(j) < i) continue;
        out << "  n" << i << " -> n" << j << " [label=\"" << ball.symbols[s] << "\", dir=none];\n";
      } else {
        out << "  n" << i << " -> n" << j << " [label=\"" << ball.symbols[s] << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string lemma30_csv(const Lemma30Report &report) {
  std::ostringstream out;
  out << "n,count_delta_free\n";
  for (std::size_t i = 0; i < report.counts.size(); ++i) out << i + 1 << ',' << report.counts[i] << '\n';
  return out.str();
}

std::string lambda_csv(const std::vector<EtaStep> &steps) {
  std::ostringstream out;
  out << "n,lambda_n,eta_n,residual\n";
  for (const EtaStep &st : steps)
    out << st.n << ',' << format_double(st.lambda) << ',' << format_double(st.eta) << ','
        << format_double(st.residual) << '\n';
  return out.str();
}

std::string curves_csv(const std::vector<CurvePoint> &points) {
  std::ostringstream out;
  out << "eta,pow_curve,g_curve\n";
  for (const CurvePoint &p : points)
    out << format_double(p.eta) << ',' << format_double(p.pow_curve) << ','
        << format_double(p.g_curve) << '\n';
  return out.str();
}

std::string delta_stats_csv(double eta, const std::vector<DeltaStatsRow> &rows) {
  std::ostringstream out;
  out << "eta,n,count_below,count_at_least,bound,within_bound\n";
  for (const DeltaStatsRow &r : rows)
    out << format_double(eta) << ',' << r.n << ',' << r.count_below << ',' << r.count_at_least
        << ',' << format_double(r.bound) << ',' << (r.within_bound ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace wilson
