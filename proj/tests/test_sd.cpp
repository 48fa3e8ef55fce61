#include <doctest.h>

#include <cmath>

#include "thymodyn/model.hpp"
#include "thymodyn/scenario.hpp"
#include "thymodyn/sd.hpp"

using namespace thymodyn;

namespace {

const ActivesTable kNoActives;

/// Closed form of dn/dt = s0*e^(-lambda_t*t) - k*n (homeostasis off).
double linear_closed_form(double t, double n0, double s0, double lambda_t, double k) {
  return n0 * std::exp(-k * t) +
         s0 * (std::exp(-lambda_t * t) - std::exp(-k * t)) / (k - lambda_t);
}

ModelParams linear_params() {
  ModelParams p = ScenarioSpec::preset(2).resolve_params();
  p.c = 0.0;
  p.lambda_mn = 0.0;
  return p;  // s_bar = b = 0 already
}

}  // namespace

TEST_CASE("config invariants") {
  SdConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SdConfig{};
  cfg.record_every = cfg.dt / 2.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SdConfig{};
  cfg.horizon = 0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SdConfig{};
  cfg.initial.n = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("a fixed point stays fixed") {
  ModelParams p;
  p.s0 = 0.0;
  const StateVector state{1.0, 0.0, 0.0, 0.0};
  const StateVector next = rk4_step(state, 0.5, p, kNoActives);
  CHECK(next.t == 1.5);
  CHECK(next.n == 0.0);
  CHECK(next.np == 0.0);
  CHECK(next.m == 0.0);
}

TEST_CASE("one step against a brute-force Euler oracle") {
  // From an empty starting state the thymic source dominates; a 1e-7 Euler
  // grid is the reference for a single dt = 1e-3 RK4 step.
  const ModelParams p = ScenarioSpec::preset(2).resolve_params();
  const double dt = 1e-3;

  double n = 0.0, np = 0.0, m = 0.0;
  const double h = 1e-7;
  const long long steps = static_cast<long long>(std::llround(dt / h));
  for (long long i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * h;
    const Derivatives d = derivatives({t, n, np, m}, p, kNoActives);
    n += h * d.dn;
    np += h * d.dnp;
    m += h * d.dm;
  }

  const StateVector step = rk4_step({0.0, 0.0, 0.0, 0.0}, dt, p, kNoActives);
  CHECK(step.n == doctest::Approx(n).epsilon(1e-5));
  // Leading order s0*dt = 56.615; losses over the step shave ~0.3% off.
  CHECK(step.n == doctest::Approx(56615.0 * dt).epsilon(5e-3));
  CHECK(step.np == doctest::Approx(np).epsilon(1e-4));
}

TEST_CASE("pure exponential decay is integrated to high order") {
  // dn/dt = -n realized with lambda_n = 1 and every other flow off.
  ModelParams p;
  p.s0 = 0.0;
  p.lambda_n = 1.0;
  p.mu_n = 0.0;
  p.lambda_mn = 0.0;

  StateVector state{0.0, 1.0, 0.0, 0.0};
  // Single coarse step: classic RK4 truncation, |error| ~ h^5/5! ~ 8.2e-8.
  const StateVector coarse = rk4_step(state, 0.1, p, kNoActives);
  CHECK(std::abs(coarse.n - std::exp(-0.1)) < 1e-7);

  // Fixed-step integration to t = 0.1 at the default step size.
  const double dt = 0.1 / 128.0;
  for (int i = 0; i < 128; ++i) state = rk4_step(state, dt, p, kNoActives);
  CHECK(std::abs(state.n - std::exp(-0.1)) < 1e-8);
}

TEST_CASE("n trajectory matches the closed form with homeostasis off") {
  const ModelParams p = linear_params();
  const double k = p.lambda_n + p.mu_n;

  SdConfig cfg;  // defaults: dt = 1/1024, horizon 100
  const Trajectory traj = run_sd(cfg, p, kNoActives);

  // Oracle sanity: the closed form agrees with a very fine Euler pass.
  {
    double n = cfg.initial.n;
    const double h = 2e-6;
    const long long steps = 500000;  // integrates to t = 1
    for (long long i = 0; i < steps; ++i) {
      const double t = static_cast<double>(i) * h;
      n += h * (p.s0 * std::exp(-p.lambda_t * t) - k * n);
    }
    CHECK(n == doctest::Approx(linear_closed_form(1.0, cfg.initial.n, p.s0, p.lambda_t, k))
                   .epsilon(1e-4));
  }

  for (const TrajectorySample& s : traj.samples) {
    const double expected = linear_closed_form(s.t, cfg.initial.n, p.s0, p.lambda_t, k);
    CHECK(std::abs(s.n - expected) <= 1e-6 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("halving dt cuts the linear-system error about sixteenfold") {
  const ModelParams p = linear_params();
  const double k = p.lambda_n + p.mu_n;

  const auto max_error = [&](double dt) {
    SdConfig cfg;
    cfg.dt = dt;
    cfg.horizon = 16.0;
    const Trajectory traj = run_sd(cfg, p, kNoActives);
    double worst = 0.0;
    for (const TrajectorySample& s : traj.samples)
      worst = std::max(worst, std::abs(s.n - linear_closed_form(s.t, cfg.initial.n, p.s0,
                                                                p.lambda_t, k)));
    return worst;
  };

  const double coarse = max_error(1.0 / 16.0);
  const double fine = max_error(1.0 / 32.0);
  CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.3));
}

TEST_CASE("runs are deterministic") {
  const ModelParams p = ScenarioSpec::preset(3).resolve_params();
  SdConfig cfg;
  cfg.horizon = 25.0;
  const Trajectory a = run_sd(cfg, p, kNoActives);
  const Trajectory b = run_sd(cfg, p, kNoActives);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].t == b.samples[i].t);
    CHECK(a.samples[i].n == b.samples[i].n);
    CHECK(a.samples[i].np == b.samples[i].np);
    CHECK(a.samples[i].m == b.samples[i].m);
    CHECK(a.samples[i].trec_pct == b.samples[i].trec_pct);
  }
}

TEST_CASE("an empty system stays empty") {
  ModelParams p;
  p.s0 = 0.0;
  SdConfig cfg;
  cfg.horizon = 10.0;
  cfg.initial = StateVector{0.0, 0.0, 0.0, 0.0};
  const Trajectory traj = run_sd(cfg, p, kNoActives);
  for (const TrajectorySample& s : traj.samples) {
    CHECK(s.n == 0.0);
    CHECK(s.np == 0.0);
    CHECK(s.m == 0.0);
    CHECK(s.trec_pct == 0.0);
  }
}

TEST_CASE("recording grid") {
  const ModelParams p = ScenarioSpec::preset(1).resolve_params();
  SdConfig cfg;
  cfg.horizon = 10.0;
  const Trajectory traj = run_sd(cfg, p, kNoActives);
  REQUIRE(traj.samples.size() == 41);  // 10 / 0.25 + initial sample
  CHECK(traj.samples.front().t == 0.0);
  CHECK(traj.samples.front().n == cfg.initial.n);
  CHECK(traj.samples.back().t == 10.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
}

TEST_CASE("overshooting a stock below zero clamps it and logs the event") {
  // One coarse step with a fast-dying isolated pool drives np negative.
  ModelParams p;
  p.s0 = 0.0;
  p.lambda_n = 0.0;
  p.mu_np = 2.0;
  std::vector<ClampEvent> clamps;
  const StateVector next =
      rk4_step({0.0, 0.0, 10.0, 0.0}, 2.0, p, kNoActives, &clamps);
  CHECK(next.np == 0.0);
  REQUIRE(clamps.size() == 1);
  CHECK(clamps[0].stock == 'p');
  CHECK(clamps[0].magnitude == doctest::Approx(10.0));

  SdConfig cfg;
  cfg.dt = 2.0;
  cfg.record_every = 2.0;
  cfg.horizon = 4.0;
  cfg.initial = StateVector{0.0, 0.0, 10.0, 0.0};
  const Trajectory traj = run_sd(cfg, p, kNoActives);
  CHECK(traj.clamps.size() == 1);
  CHECK(traj.samples.back().np == 0.0);
}

TEST_CASE("divergence raises an engine error naming the time") {
  ModelParams p;
  p.s0 = 1.6e308;
  SdConfig cfg;
  cfg.dt = 0.25;
  cfg.horizon = 10.0;
  CHECK_THROWS_AS(run_sd(cfg, p, kNoActives), EngineError);
  try {
    run_sd(cfg, p, kNoActives);
  } catch (const EngineError& e) {
    CHECK(std::string(e.what()).find("t = ") != std::string::npos);
  }
}
