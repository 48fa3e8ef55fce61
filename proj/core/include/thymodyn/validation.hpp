#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thymodyn/dataset.hpp"
#include "thymodyn/trajectory.hpp"

namespace thymodyn {

/// Residual space for the precision metric.
///
/// log10_pct (the default used in reports) compares log10 of the two
/// percentage series — the survey is a log10 quantity, and only in this
/// space does the fit quality order the scenarios the way their known
/// precision ranking demands. linear_pct compares raw percentage points.
enum class SseSpace { log10_pct, linear_pct };

const char* to_string(SseSpace space);

/// Sum of squared residuals between the trajectory's trec_pct (linearly
/// interpolated at each bin midpoint) and the dataset percentages.
/// Throws EngineError if the trajectory does not cover the last midpoint.
/// When `residuals` is given it receives one residual per bin.
double sse(const Trajectory& traj, const TrecDataset& ds,
           SseSpace space = SseSpace::log10_pct,
           std::vector<double>* residuals = nullptr);

/// Precision and resource summary of one engine run on one scenario.
struct FitReport {
  std::string scenario;  // "1", "2", "3" or "custom"
  std::string engine;    // "sd" or "abs"
  double sse = 0.0;
  SseSpace sse_space = SseSpace::log10_pct;
  double wall_time_s = 0.0;
  std::optional<std::int64_t> peak_mem_bytes;  // absent when not measurable
  std::vector<double> residuals;               // sse == sum of squares
};

FitReport make_fit_report(const std::string& scenario, const std::string& engine,
                          const Trajectory& traj, const TrecDataset& ds,
                          double wall_time_s,
                          std::optional<std::int64_t> peak_mem_bytes,
                          SseSpace space = SseSpace::log10_pct);

/// Side-by-side ratios (abs relative to sd) for one scenario.
struct ComparisonSummary {
  std::string scenario;
  double sse_ratio = 1.0;
  double time_ratio = 1.0;
  std::optional<double> mem_ratio;
  bool sd_cheaper = true;
};

/// Requires both reports to be for the same scenario.
ComparisonSummary compare_engines(const FitReport& sd_report,
                                  const FitReport& abs_report);

/// One qualitative pass/fail result of qualitative_checks.
struct Finding {
  std::string name;
  int scenario = 0;
  bool pass = false;
  std::string detail;
};

/// Scenario-shape assertions on the three preset trajectories
/// (keys 1, 2, 3; all must be present):
///   s1_np_peak_then_decay  - Np has an interior peak, ends below half of it,
///                            and shows no late plateau.
///   s2_np_plateau          - Np relative change over [60,100] below 2%.
///   s2_np_source_decoupled - late Np decay rate below a third of the thymic
///                            trend rate lambda_t (the pool is sustained by
///                            proliferation rather than tracking its source).
///   s3_n_early_decay       - N peaks before age 10 and halves by age 20.
///   s3_n_midlife_stability - [15,25] decline rate under half the [1,12] one.
///   s3_n_late_exponential  - log N is linear on [30,100] with slope within
///                            25% of -lambda_t.
/// Findings are reported, never thrown; degenerate (all-zero) trajectories
/// fail every check.
std::vector<Finding> qualitative_checks(const std::map<int, Trajectory>& traj_by_scenario,
                                        double lambda_t);

/// Process peak RSS in bytes, when the platform exposes it.
std::optional<std::int64_t> peak_rss_bytes();

}  // namespace thymodyn
