#pragma once

#include <string>
#include <vector>

namespace thymodyn {

/// One recorded sample of a run. trec_pct = 100*n/(n+np), the share of
/// the naive pool that is of direct thymic origin (0 when the pool is empty).
struct TrajectorySample {
  double t = 0.0;
  double n = 0.0;
  double np = 0.0;
  double m = 0.0;
  double trec_pct = 0.0;
};

/// A stock that integrated below zero and was clamped back to exactly 0.
struct ClampEvent {
  double t = 0.0;
  char stock = '?';      // 'n', 'p' (np) or 'm'
  double magnitude = 0.0;  // how far below zero the raw update went
};

double trec_percentage(double n, double np);

/// Time-ordered samples plus derived observables and the clamp-event log.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<ClampEvent> clamps;

  /// Linear interpolation of trec_pct at `age`. Throws EngineError if the
  /// trajectory does not cover `age`.
  double trec_at(double age) const;
  /// Same, for the individual stocks ('n', 'p', 'm').
  double stock_at(double age, char stock) const;

  double start_time() const;
  double end_time() const;
};

}  // namespace thymodyn
