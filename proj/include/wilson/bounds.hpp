#pragma once

#include <vector>

namespace wilson {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr double kEtaUpper = 30.0 / 31.0;

/// g(η) = 30^η η^(−η) (1−η)^(η−1), evaluated in log space. Domain (0,1).
double g_eta(double eta);
double log_g_eta(double eta);

/// One step of the crossing recursion: Λ′ = λ^(1−η) = g(η).
struct EtaStep {
  int n = 0;
  double lambda = 0;
  double eta = 0;
  double lambda_next = 0;
  double residual = 0;  // |λ^(1−η) − g(η)|
};

/// The unique η in (0, 30/31] with λ^(1−η) = g(η), by bisection on
/// ln g(η) − (1−η) ln λ. Requires 1 + tol < λ ≤ 31.
EtaStep solve_crossing(double lambda, double tol = kDefaultTolerance, int n = 1);

/// Λ₁ = 2 and Λₙ₊₁ = solve_crossing(Λₙ).lambda_next.
std::vector<EtaStep> lambda_sequence(int steps, double tol = kDefaultTolerance);

/// inf over η of max{λ^(1−η), g(η)}; equals 1 for λ ≤ 1 + tol.
double eval_growth_bound(double lambda, double tol = kDefaultTolerance);

struct CurvePoint {
  double eta = 0;
  double pow_curve = 0;  // λ^(1−η)
  double g_curve = 0;
};

/// Both curves of the crossing on η = 0.01, 0.02, …, 0.99.
std::vector<CurvePoint> crossing_curves(double lambda = 2.0);

}  // namespace wilson
