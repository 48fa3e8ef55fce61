#include <doctest.h>

#include <cmath>
#include <random>

#include "thymodyn/model.hpp"
#include "thymodyn/scenario.hpp"
#include "thymodyn/sd.hpp"

using namespace thymodyn;

namespace {
const ActivesTable kNoActives;
}

TEST_CASE("baseline parameter values") {
  const ModelParams p;
  CHECK(p.s0 == 56615.0);
  CHECK(p.lambda_t == std::log(2.0) / 15.7);
  CHECK(p.mu_n == 4.4);
  CHECK(p.mu_np == 0.13);
  CHECK(p.mu_m == 0.05);
  CHECK(p.lambda_a == 0.0);
  CHECK(p.lambda_mn == 0.0);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("parameter invariants are enforced") {
  ModelParams p;
  p.mu_n = -0.1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = ModelParams{};
  p.np_bar = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.np_bar = std::nan("");
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("export modifier") {
  ModelParams p;
  p.s_bar = 0.48;
  p.np_bar = 387.0;
  CHECK(export_modifier(0.0, p) == 1.0);
  CHECK(export_modifier(387.0, p) == doctest::Approx(1.0 / 1.48).epsilon(1e-12));

  p.s_bar = 0.0;
  CHECK(export_modifier(500.0, p) == 1.0);  // s_bar = 0 disables the homeostasis
}

TEST_CASE("death modifier") {
  ModelParams p;
  p.b = 4.2;
  p.np_bar = 392.0;
  CHECK(death_modifier(0.0, p) == 1.0);
  p.np_bar = 300.0;
  CHECK(death_modifier(300.0, p) == doctest::Approx(3.1).epsilon(1e-12));

  p.b = 0.0;
  CHECK(death_modifier(10000.0, p) == 1.0);  // b = 0 keeps the death rate flat
}

TEST_CASE("dilution modifier") {
  ModelParams p;
  p.np_bar = 392.0;
  CHECK(dilution_modifier(0.0, 0.0, p) == 1.0);
  CHECK(dilution_modifier(100.0, 292.0, p) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dilution_modifier(3673.0, 0.0, p) ==
        doctest::Approx(1.0 / (1.0 + 3673.0 / 392.0)).epsilon(1e-12));
}

TEST_CASE("thymic export rate") {
  ModelParams p;
  CHECK(thymic_export_rate(0.0, 0.0, p) == 56615.0);
  // One half-life later the export has halved.
  CHECK(thymic_export_rate(15.7, 0.0, p) == doctest::Approx(28307.5).epsilon(1e-12));
  CHECK(thymic_export_rate(2000.0, 0.0, p) < 1e-30);
}

TEST_CASE("modifier bounds hold over randomized inputs") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> pop(0.0, 2.0e5);
  std::uniform_real_distribution<double> unit(0.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    ModelParams p;
    p.s_bar = unit(gen);
    p.b = unit(gen);
    p.np_bar = 1.0 + pop(gen);
    const double n = pop(gen);
    const double np = pop(gen);
    const double s = export_modifier(np, p);
    const double g = death_modifier(np, p);
    const double h = dilution_modifier(n, np, p);
    CHECK(s > 0.0);
    CHECK(s <= 1.0);
    CHECK(g >= 1.0);
    CHECK(g < 1.0 + p.b + 1e-12);
    CHECK(h > 0.0);
    CHECK(h <= 1.0);
  }
}

TEST_CASE("derivatives at the origin reduce to the thymic source") {
  const ModelParams p = ScenarioSpec::preset(2).resolve_params();
  const Derivatives d = derivatives({0.0, 0.0, 0.0, 0.0}, p, kNoActives);
  CHECK(d.dn == 56615.0);
  CHECK(d.dnp == 0.0);
  CHECK(d.dm == 0.0);
}

TEST_CASE("proliferating pool decays at mu_np when isolated") {
  const ModelParams p = ScenarioSpec::preset(1).resolve_params();  // c = 0
  const Derivatives d = derivatives({10.0, 0.0, 100.0, 0.0}, p, kNoActives);
  CHECK(d.dnp == doctest::Approx(-13.0).epsilon(1e-12));
}

TEST_CASE("memory stock is inert with no activation input") {
  ModelParams p = ScenarioSpec::preset(1).resolve_params();
  REQUIRE(p.lambda_a == 0.0);
  const Derivatives d = derivatives({30.0, 500.0, 800.0, 0.0}, p, kNoActives);
  CHECK(d.dm == 0.0);

  SdConfig cfg;
  cfg.horizon = 20.0;
  const Trajectory traj = run_sd(cfg, p, kNoActives);
  for (const TrajectorySample& s : traj.samples) CHECK(s.m == 0.0);
}

TEST_CASE("with homeostasis off the n equation is exactly linear") {
  // s_bar = 0 and b = 0 make s and g exactly 1, so dn must equal the
  // hand-coded linear right-hand side bit for bit.
  const ModelParams p = ScenarioSpec::preset(2).resolve_params();
  REQUIRE(p.s_bar == 0.0);
  REQUIRE(p.b == 0.0);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> pop(0.0, 1.5e5);
  std::uniform_real_distribution<double> age(0.0, 100.0);
  for (int i = 0; i < 100; ++i) {
    const StateVector state{age(gen), pop(gen), pop(gen), pop(gen)};
    const Derivatives d = derivatives(state, p, kNoActives);
    const double linear =
        p.s0 * std::exp(-p.lambda_t * state.t) - (p.lambda_n + p.mu_n) * state.n;
    CHECK(d.dn == linear);
  }
}

TEST_CASE("equilibrium proliferation rate") {
  CHECK(equilibrium_proliferation_rate(0.13, 300.0) == doctest::Approx(0.26).epsilon(1e-12));
  CHECK(equilibrium_proliferation_rate(0.13, 713.0) ==
        doctest::Approx(0.13 * (1.0 + 300.0 / 713.0)).epsilon(1e-12));
  CHECK(equilibrium_proliferation_rate(0.0, 392.0) == 0.0);
  CHECK_THROWS_AS(equilibrium_proliferation_rate(0.13, 0.0), ConfigError);
}

TEST_CASE("derived proliferation rate pins the pool at its equilibrium size") {
  ModelParams p;
  p.s0 = 0.0;
  p.lambda_mn = 0.0;
  p.np_bar = 387.0;
  p.c = equilibrium_proliferation_rate(p.mu_np, p.np_bar);

  const double eq = kProliferationEquilibriumCells;
  const Derivatives at_eq = derivatives({0.0, 0.0, eq, 0.0}, p, kNoActives);
  CHECK(std::abs(at_eq.dnp) < 1e-12);
  // Exact when np_bar makes the ratio representable.
  p.np_bar = 300.0;
  p.c = equilibrium_proliferation_rate(p.mu_np, p.np_bar);
  CHECK(derivatives({0.0, 0.0, eq, 0.0}, p, kNoActives).dnp == 0.0);

  // Attracting from both sides.
  CHECK(derivatives({0.0, 0.0, 150.0, 0.0}, p, kNoActives).dnp > 0.0);
  CHECK(derivatives({0.0, 0.0, 600.0, 0.0}, p, kNoActives).dnp < 0.0);
}

TEST_CASE("actives table lookup") {
  CHECK(kNoActives.at(5.0) == 0.0);  // default table is all zeros

  const ActivesTable table({{0.0, 100.0}, {10.0, 200.0}, {20.0, 150.0}});
  CHECK(table.at(-5.0) == 100.0);
  CHECK(table.at(0.0) == 100.0);
  CHECK(table.at(5.0) == doctest::Approx(150.0));
  CHECK(table.at(15.0) == doctest::Approx(175.0));
  CHECK(table.at(50.0) == 150.0);  // clamped past the last knot

  CHECK_THROWS_AS(ActivesTable({{0.0, 1.0}, {0.0, 2.0}}), ConfigError);
  CHECK_THROWS_AS(ActivesTable({{0.0, 1.0}, {5.0, -2.0}}), ConfigError);
}
