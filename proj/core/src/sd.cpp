#include "thymodyn/sd.hpp"

#include <algorithm>
#include <cmath>

namespace thymodyn {

namespace {

struct Stocks {
  double n, np, m;
};

Stocks clamped(const Stocks& s) {
  return {s.n < 0.0 ? 0.0 : s.n, s.np < 0.0 ? 0.0 : s.np, s.m < 0.0 ? 0.0 : s.m};
}

Derivatives eval(double t, const Stocks& s, const ModelParams& p,
                 const ActivesTable& actives) {
  const Stocks c = clamped(s);
  return derivatives(StateVector{t, c.n, c.np, c.m}, p, actives);
}

}  // namespace

void SdConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("SdConfig.dt must be > 0");
  if (!(dt <= record_every)) throw ConfigError("SdConfig.record_every must be >= dt");
  if (!(record_every <= horizon)) throw ConfigError("SdConfig.horizon must be >= record_every");
  if (!std::isfinite(horizon)) throw ConfigError("SdConfig.horizon must be finite");
  initial.validate();
  if (initial.t >= horizon) throw ConfigError("SdConfig.initial.t must be below horizon");
}

StateVector rk4_step(const StateVector& state, double dt, const ModelParams& p,
                     const ActivesTable& actives, std::vector<ClampEvent>* clamps) {
  if (!(dt > 0.0)) throw ConfigError("rk4_step: dt must be > 0");
  const Stocks y{state.n, state.np, state.m};
  const double t = state.t;
  const double h2 = 0.5 * dt;

  const Derivatives k1 = eval(t, y, p, actives);
  const Derivatives k2 = eval(t + h2, {y.n + h2 * k1.dn, y.np + h2 * k1.dnp, y.m + h2 * k1.dm}, p, actives);
  const Derivatives k3 = eval(t + h2, {y.n + h2 * k2.dn, y.np + h2 * k2.dnp, y.m + h2 * k2.dm}, p, actives);
  const Derivatives k4 = eval(t + dt, {y.n + dt * k3.dn, y.np + dt * k3.dnp, y.m + dt * k3.dm}, p, actives);

  const double w = dt / 6.0;
  StateVector next;
  next.t = t + dt;
  next.n = y.n + w * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn);
  next.np = y.np + w * (k1.dnp + 2.0 * k2.dnp + 2.0 * k3.dnp + k4.dnp);
  next.m = y.m + w * (k1.dm + 2.0 * k2.dm + 2.0 * k3.dm + k4.dm);

  if (!std::isfinite(next.n) || !std::isfinite(next.np) || !std::isfinite(next.m))
    throw EngineError("integration diverged at t = " + std::to_string(next.t));

  const auto clamp = [&](double& value, char stock) {
    if (value < 0.0) {
      if (clamps) clamps->push_back({next.t, stock, -value});
      value = 0.0;
    }
  };
  clamp(next.n, 'n');
  clamp(next.np, 'p');
  clamp(next.m, 'm');
  return next;
}

Trajectory run_sd(const SdConfig& cfg, const ModelParams& p, const ActivesTable& actives) {
  cfg.validate();
  p.validate();

  const long long steps_per_record =
      std::max(1LL, static_cast<long long>(std::llround(cfg.record_every / cfg.dt)));
  const long long total_steps =
      static_cast<long long>(std::llround((cfg.horizon - cfg.initial.t) / cfg.dt));

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(total_steps / steps_per_record) + 2);

  StateVector state = cfg.initial;
  traj.samples.push_back({state.t, state.n, state.np, state.m, trec_percentage(state.n, state.np)});

  for (long long i = 1; i <= total_steps; ++i) {
    state = rk4_step(state, cfg.dt, p, actives, &traj.clamps);
    // Keep the grid exact: t from the step index, not accumulation.
    state.t = cfg.initial.t + static_cast<double>(i) * cfg.dt;
    if (i % steps_per_record == 0 || i == total_steps)
      traj.samples.push_back({state.t, state.n, state.np, state.m, trec_percentage(state.n, state.np)});
  }
  return traj;
}

}  // namespace thymodyn
