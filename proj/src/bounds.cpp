#include "wilson/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace wilson {

namespace {

constexpr double kEtaLower = 1e-12;
constexpr int kMaxBisection = 200;
constexpr double kMaxLambda = 31.0;

}  // namespace

double log_g_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("g(eta) needs eta in (0,1)");
  return eta * std::log(30.0) - eta * std::log(eta) - (1.0 - eta) * std::log1p(-eta);
}

double g_eta(double eta) { return std::exp(log_g_eta(eta)); }

EtaStep solve_crossing(double lambda, double tol, int n) {
  if (!(lambda > 1.0 + tol))
    throw std::domain_error("solve_crossing needs lambda > 1 + tol");
  // Above 31 the second branch can cross again past 30/31.
  if (lambda > kMaxLambda) throw std::domain_error("solve_crossing needs lambda <= 31");
  const double log_lambda = std::log(lambda);
  auto h = [&](double eta) { return log_g_eta(eta) - (1.0 - eta) * log_lambda; };

  double lo = kEtaLower, hi = kEtaUpper;
  for (int i = 0; i < kMaxBisection; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at one ulp
    if (h(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double eta = std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;

  EtaStep step;
  step.n = n;
  step.lambda = lambda;
  step.eta = eta;
  step.lambda_next = std::exp((1.0 - eta) * log_lambda);
  step.residual = std::abs(step.lambda_next - g_eta(eta));
  if (step.residual > tol)
    throw std::runtime_error("crossing residual above tolerance");
  return step;
}

std::vector<EtaStep> lambda_sequence(int steps, double tol) {
  if (steps < 1) throw std::invalid_argument("lambda_sequence needs steps >= 1");
  std::vector<EtaStep> out;
  out.reserve(static_cast<std::size_t>(steps));
  double lambda = 2.0;
  for (int n = 1; n <= steps; ++n) {
    EtaStep s = solve_crossing(lambda, tol, n);
    out.push_back(s);
    lambda = s.lambda_next;
  }
  return out;
}

double eval_growth_bound(double lambda, double tol) {
  if (lambda < 1.0) throw std::domain_error("growth rates are at least 1");
  if (lambda <= 1.0 + tol) return 1.0;
  return solve_crossing(lambda, tol).lambda_next;
}

std::vector<CurvePoint> crossing_curves(double lambda) {
  std::vector<CurvePoint> out;
  for (int i = 1; i <= 99; ++i) {
    const double eta = i / 100.0;
    out.push_back({eta, std::pow(lambda, 1.0 - eta), g_eta(eta)});
  }
  return out;
}

}  // namespace wilson
