#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wilson/bounds.hpp"
#include "wilson/catalog.hpp"
#include "wilson/growth.hpp"
#include "wilson/words.hpp"

namespace wilson {

inline constexpr const char *kVersion = "1.0.0";

/// Result of the full verification suite. `json` lists every claim in a
/// fixed order and contains no timings, so equal inputs give equal bytes.
struct VerifyAllResult {
  bool pass = false;
  std::size_t claims = 0;
  std::size_t failed = 0;
  std::string json;
};

/// Runs every check on a fresh engine with the given state budget. `threads`
/// only affects ball enumeration and never the report.
VerifyAllResult verify_all(std::uint64_t state_budget, int threads);

std::string catalog_json(Catalog &catalog);
std::string free_monoid_json(const std::vector<FreeMonoidReport> &reports);
std::string local_iso_json(const std::vector<LocalIsoResult> &results);

std::string growth_csv(const std::vector<GrowthRow> &rows);
std::string ball_csv(const Ball &ball);
std::string ball_dot(const Ball &ball);
std::string lemma30_csv(const Lemma30Report &report);
std::string lambda_csv(const std::vector<EtaStep> &steps);
std::string curves_csv(const std::vector<CurvePoint> &points);
std::string delta_stats_csv(double eta, const std::vector<DeltaStatsRow> &rows);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace wilson
