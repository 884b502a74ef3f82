// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "wilson/bounds.hpp"
#include "wilson/catalog.hpp"
#include "wilson/growth.hpp"
#include "wilson/words.hpp"

using namespace wilson;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string &name, double limit_seconds,
               const std::function<Outcome()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_seconds) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit)";
  }
  if (!o.pass) ++failures;
  char time_buf[32];
  std::snprintf(time_buf, sizeof time_buf, "%.2fs", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " [" << time_buf
            << "]" << (o.detail.empty() ? "" : " - " + o.detail) << std::endl;
}

std::string run_cli(const std::string &args) {
  const std::string cmd = std::string(WILSON_CLI_PATH) + " " + args;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start " + cmd);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw std::runtime_error(cmd + " exited with status " + std::to_string(status));
  return out;
}

// Minimum of max{λ^(1−η), g(η)} by a uniform grid over [1e-6, 1−1e-6]
// followed by a second uniform grid around the best point.
double grid_minimum(double lambda) {
  constexpr int kPoints = 100000;
  auto f = [&](double eta) { return std::max(std::pow(lambda, 1.0 - eta), g_eta(eta)); };
  double lo = 1e-6, hi = 1.0 - 1e-6;
  double best = INFINITY;
  for (int pass = 0; pass < 2; ++pass) {
    const double step = (hi - lo) / (kPoints - 1);
    double best_eta = lo;
    for (int i = 0; i < kPoints; ++i) {
      const double eta = lo + i * step;
      const double v = f(eta);
      if (v < best) {
        best = v;
        best_eta = eta;
      }
    }
    lo = std::max(1e-6, best_eta - step);
    hi = std::min(1.0 - 1e-6, best_eta + step);
  }
  return best;
}

std::vector<std::pair<Perm, Perm>> swapper_pairs() {
  const auto sw = find_swappers(fano::psl32(), Point(1), Point(2));
  std::vector<std::pair<Perm, Perm>> out;
  for (const Perm &u : sw)
    for (const Perm &v : sw)
      if (u != v) out.emplace_back(u, v);
  return out;
}

}  // namespace

int main() {
  criterion(1, "|<x,y,z>| = 168, perfect, simple, 2-transitive; <xy,yz,zx> is the same group", 1,
            [] {
              const PermGroup &A = fano::psl32();
              const std::vector<Perm> prods{fano::x() * fano::y(), fano::y() * fano::z(),
                                            fano::z() * fano::x()};
              const bool ok = A.size() == 168 && is_perfect(A) && is_simple(A) &&
                              is_two_transitive(A) && PermGroup::closure(prods) == A;
              return Outcome{ok, "order " + std::to_string(A.size())};
            });

  criterion(2, "identity catalog verified, including the non-identity claims", 10, [] {
    Engine e;
    Catalog c(e);
    std::size_t passed = 0, total = 0;
    std::string failed;
    for (const auto &claim : c.identity_catalog()) {
      ++total;
      const ClaimVerdict v = c.check(claim);
      if (v.pass)
        ++passed;
      else
        failed += " " + v.id;
    }
    return Outcome{passed == total && total >= 9,
                   std::to_string(passed) + "/" + std::to_string(total) + " claims" + failed};
  });

  criterion(3, "abar agrees with the prefix rule for all a in A and strings of length <= 4", 60, [] {
    Engine e;
    Catalog c(e);
    std::vector<std::string> strings{""};
    for (std::size_t k = 0; k < strings.size(); ++k)
      if (strings[k].size() < 4)
        for (char ch = '1'; ch <= '7'; ++ch) strings.push_back(strings[k] + ch);
    std::uint64_t cases = 0, bad = 0;
    for (const Perm &a : fano::psl32().elements()) {
      const Element abar = c.abar(a);
      for (const std::string &s : strings) {
        ++cases;
        bad += e.act(abar, s) != abar_act_prefix(s, a);
      }
    }
    return Outcome{bad == 0 && cases == 168ull * 2801ull,
                   std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches"};
  });

  criterion(4, "Delta-free counts <= 30 for n <= 40; 3, 6, 9 at n = 1, 2, 3; counters agree to 15", 10,
            [] {
              const Lemma30Report r = verify_lemma30(40);
              bool ok = r.all_within_30 && r.counts[0] == 3 && r.counts[1] == 6 && r.counts[2] == 9;
              for (int n = 1; n <= 15; ++n) ok = ok && count_delta_free(n) == count_delta_free_naive(n);
              return Outcome{ok, "plateau " + std::to_string(r.plateau_value) + " from n = " +
                                     std::to_string(r.plateau_from)};
            });

  criterion(5, "{a,d}-words of length <= 8 give 511 elements for every swapper pair; refinement to 3",
            120, [] {
              Engine e;
              Catalog c(e);
              std::size_t ok_pairs = 0, pairs = 0;
              std::string bad;
              for (const auto &[u, v] : swapper_pairs()) {
                ++pairs;
                const FreeMonoidReport r = free_monoid_check(c, c.free_quadruple(u, v), 8, 3);
                if (r.pass() && r.distinct == 511)
                  ++ok_pairs;
                else
                  bad += " " + u.to_cycles() + "," + v.to_cycles() + ": " + r.counterexample;
              }
              return Outcome{ok_pairs == pairs && pairs == 12,
                             std::to_string(ok_pairs) + "/" + std::to_string(pairs) + " ordered pairs" + bad};
            });

  criterion(6, "a, b, c, d have roots swapping 1 and 2, sigma != tau, matching sections", 1, [] {
    Engine e;
    Catalog c(e);
    bool ok = true;
    for (const auto &[u, v] : swapper_pairs()) ok = ok && c.free_quadruple(u, v).decompositions_hold();
    return Outcome{ok, ""};
  });

  criterion(7, "local isomorphism: n = 1 at R = 1; some n <= 4 at R = 2, 3 with equal partitions", 300,
            [] {
              Engine e;
              Catalog c(e);
              const LocalIsoResult r1 = find_min_n_local_iso(c, 1, 4);
              bool ok = r1.n == 1;
              std::string detail = "R=1: n=" + (r1.n ? std::to_string(*r1.n) : std::string("none"));
              for (int R : {2, 3}) {
                const LocalIsoResult r = find_min_n_local_iso(c, R, 4);
                ok = ok && r.n.has_value();
                if (r.n)
                  ok = ok && partitions_equal(word_partition(e, c.tilde(), R), word_partition(e, c.S(*r.n), R));
                detail += "; R=" + std::to_string(R) + ": n=" + (r.n ? std::to_string(*r.n) : std::string("none"));
              }
              return Outcome{ok, detail};
            });

  criterion(8, "ball sizes for S_1, S_2, S~ to R = 10; submultiplicative; dedup equals exact to R = 6",
            600, [] {
              Engine e;
              Catalog c(e);
              bool ok = true;
              std::string detail;
              for (const char *sel : {"S:1", "S:2", "tilde"}) {
                const auto sizes = ball_sizes(e, c.by_name(sel), 10);
                BallOptions exact;
                exact.exact_only = true;
                exact.with_edges = false;
                const auto oracle = ball_sizes(enumerate_ball(e, c.by_name(sel), 6, exact));
                ok = ok && submultiplicativity_violations(sizes).empty() &&
                     std::equal(oracle.begin(), oracle.end(), sizes.begin());
                detail += std::string(detail.empty() ? "" : "; ") + sel + " #B(10)=" + std::to_string(sizes.back());
              }
              return Outcome{ok, detail};
            });

  criterion(9, "Lambda sequence and growth bound against the grid-scan oracle", 10, [] {
    const auto seq = lambda_sequence(500);
    bool ok = seq[0].lambda == 2.0;
    int below = 0;
    double worst_residual = 0;
    for (const EtaStep &s : seq) {
      ok = ok && s.lambda_next > 1.0 && s.lambda_next < s.lambda;
      worst_residual = std::max(worst_residual, s.residual);
      if (!below && s.lambda < 1.05) below = s.n;
    }
    ok = ok && worst_residual <= 1e-12 && below > 0;
    ok = ok && seq[0].eta > 0.08 && seq[0].eta < 0.10;
    ok = ok && seq[0].lambda_next > 1.85 && seq[0].lambda_next < 1.90;
    double worst_gap = 0;
    for (double lambda : {1.5, 2.0, 4.0})
      worst_gap = std::max(worst_gap, std::abs(eval_growth_bound(lambda) - grid_minimum(lambda)));
    ok = ok && worst_gap <= 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof buf, "eta_1=%.6f Lambda_2=%.6f first n with Lambda_n<1.05: %d, grid gap %.2e",
                  seq[0].eta, seq[0].lambda_next, below, worst_gap);
    return Outcome{ok, buf};
  });

  criterion(10, "geodesics of S_2 with <= eta n Delta-occurrences obey the bound, R <= 10", 300, [] {
    Engine e;
    Catalog c(e);
    const Ball ball = enumerate_ball(e, c.S(2), 10);
    const auto words = geodesic_iwords(ball);
    bool ok = true;
    std::string bad;
    for (double eta : {0.1, 0.2, 0.3})
      for (const DeltaStatsRow &row : geodesic_delta_stats(words, eta, 10))
        if (!row.within_bound) {
          ok = false;
          bad += " eta=" + std::to_string(eta) + ",n=" + std::to_string(row.n);
        }
    return Outcome{ok, std::to_string(words.size()) + " geodesics" + bad};
  });

  criterion(11, "verify-all output is byte-identical across runs and thread counts 1 and 4", 120, [] {
    const std::string a = run_cli("verify-all --threads 1");
    const std::string b = run_cli("verify-all --threads 1");
    const std::string c = run_cli("verify-all --threads 4");
    return Outcome{a == b && a == c && !a.empty(), std::to_string(a.size()) + " bytes"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
