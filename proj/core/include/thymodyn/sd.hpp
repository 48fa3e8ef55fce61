#pragma once

#include "thymodyn/model.hpp"
#include "thymodyn/trajectory.hpp"

namespace thymodyn {

/// Deterministic stock-flow engine configuration.
/// The recording cadence is snapped to a whole number of dt steps.
struct SdConfig {
  double dt = 1.0 / 1024.0;    ///< integration step, years
  double horizon = 100.0;      ///< years
  double record_every = 0.25;  ///< output cadence, years
  StateVector initial{0.0, 3673.0, 0.0, 0.0};

  /// Throws ConfigError unless 0 < dt <= record_every <= horizon and the
  /// initial state is valid.
  void validate() const;
};

/// Classic fixed-step 4th-order Runge-Kutta update of (n, np, m); t advances
/// by dt. Intermediate stage states are evaluated with stocks clamped at 0;
/// a final stock below 0 is clamped to exactly 0 and recorded in `clamps`
/// when given. Throws EngineError naming the time if the update is not finite.
StateVector rk4_step(const StateVector& state, double dt, const ModelParams& p,
                     const ActivesTable& actives,
                     std::vector<ClampEvent>* clamps = nullptr);

/// Fixed-step integration from cfg.initial to the horizon, recording every
/// cfg.record_every years (first sample is the initial state). Deterministic:
/// identical inputs produce bit-identical trajectories.
Trajectory run_sd(const SdConfig& cfg, const ModelParams& p,
                  const ActivesTable& actives);

}  // namespace thymodyn
