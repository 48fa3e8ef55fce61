// Microbenchmarks for the two engines and the validation metric.
// These complement the CLI's `bench` command (which times whole scenario
// runs); here the hot paths are isolated.

#include <benchmark/benchmark.h>

#include "thymodyn/abs.hpp"
#include "thymodyn/scenario.hpp"
#include "thymodyn/sd.hpp"
#include "thymodyn/validation.hpp"

using namespace thymodyn;

namespace {

const ActivesTable kActives;

ModelParams scenario_params(int id) {
  return ScenarioSpec::preset(id).resolve_params();
}

void BM_Rk4Step(benchmark::State& state) {
  const ModelParams p = scenario_params(3);
  const StateVector mid{20.0, 1200.0, 18000.0, 0.0};
  for (auto _ : state) {
    StateVector next = rk4_step(mid, 1.0 / 1024.0, p, kActives);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_Rk4Step);

void BM_SdRun(benchmark::State& state) {
  const ModelParams p = scenario_params(static_cast<int>(state.range(0)));
  const SdConfig cfg;
  for (auto _ : state) {
    Trajectory traj = run_sd(cfg, p, kActives);
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_SdRun)->Arg(1)->Arg(2)->Arg(3);

void BM_AbsSlice(benchmark::State& state) {
  const ModelParams p = scenario_params(2);
  Rng rng(42);
  AgentPopulation popn;
  popn.t = 20.0;
  popn.naive = 3600;
  popn.naive_prolif = 100000;
  for (auto _ : state) {
    AgentPopulation copy = popn;
    SliceStats stats = step_abs(copy, 1.0 / 1024.0, p, kActives, rng, 1.0);
    benchmark::DoNotOptimize(stats);
  }
}
BENCHMARK(BM_AbsSlice);

void BM_AbsReplicate(benchmark::State& state) {
  const ModelParams p = scenario_params(static_cast<int>(state.range(0)));
  AbsConfig cfg;
  cfg.horizon = 25.0;
  cfg.replicates = 1;
  for (auto _ : state) {
    AbsResult result = run_abs(cfg, p, kActives, 1);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_AbsReplicate)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Sse(benchmark::State& state) {
  const ModelParams p = scenario_params(3);
  const Trajectory traj = run_sd(SdConfig{}, p, kActives);
  const TrecDataset& ds = TrecDataset::reference();
  for (auto _ : state) {
    double value = sse(traj, ds);
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_Sse);

}  // namespace

BENCHMARK_MAIN();
