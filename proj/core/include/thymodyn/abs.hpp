#pragma once

#include <cstdint>
#include <vector>

#include "thymodyn/model.hpp"
#include "thymodyn/rng.hpp"
#include "thymodyn/trajectory.hpp"

namespace thymodyn {

/// Stochastic agent-based engine configuration.
///
/// `scale` is the cells-per-agent ratio: one agent stands for `scale`
/// cells/mm^3, so agent counts are population/scale and larger scales trade
/// resolution for speed (and more demographic noise in cell units).
struct AbsConfig {
  double dt = 1.0 / 1024.0;    ///< time-slice length, years
  double horizon = 100.0;      ///< years
  double record_every = 0.25;  ///< recording cadence, years
  std::uint64_t seed = 1;      ///< ensemble seed
  double scale = 1.0;          ///< cells represented by one agent
  std::int64_t initial_naive = 3673;  ///< initial naive population, cells/mm^3
  int replicates = 1;          ///< ensemble size

  /// Throws ConfigError unless the grid fields are valid, scale > 0,
  /// replicates >= 1, and the worst-case competing transition probability
  /// per agent and slice, max(lambda_n + mu_n*(1+b), mu_np + c,
  /// mu_m + lambda_mn) * dt, is at most 0.1.
  void validate(const ModelParams& p) const;
};

/// Counted multiset of agents by state plus the fractional-birth
/// accumulators that carry sub-agent influx expectation between slices.
struct AgentPopulation {
  std::int64_t naive = 0;
  std::int64_t naive_prolif = 0;
  std::int64_t memory = 0;
  double thymic_accumulator = 0.0;  // in [0, 1)
  double memory_accumulator = 0.0;  // in [0, 1)
  double t = 0.0;

  std::int64_t total() const { return naive + naive_prolif + memory; }
};

/// Event counts of one slice; conversions and reversions conserve the agent
/// total, so total' - total == births + spawns + memory_influx - deaths.
struct SliceStats {
  std::int64_t thymic_births = 0;
  std::int64_t naive_deaths = 0;
  std::int64_t conversions = 0;     // naive -> naive_prolif
  std::int64_t prolif_deaths = 0;
  std::int64_t spawns = 0;          // naive_prolif self-renewal
  std::int64_t memory_deaths = 0;
  std::int64_t reversions = 0;      // memory -> naive_prolif
  std::int64_t memory_influx = 0;

  std::int64_t deaths() const { return naive_deaths + prolif_deaths + memory_deaths; }
  std::int64_t births() const { return thymic_births + spawns + memory_influx; }
};

/// Advances the population by one slice of length dt.
///
/// All transition counts are sampled from the start-of-slice state; the
/// homeostasis modifiers g, h, s are evaluated on the scaled (cell-unit)
/// start counts. Per state the competing risks [death | transition | nothing]
/// are partitioned exactly as a multinomial: deaths ~ Bin(count, p_death),
/// then transitions ~ Bin(count - deaths, p_trans/(1 - p_death)), so a dying
/// agent cannot also convert, spawn or revert. Thymic (and memory) influx
/// accumulates expected arrivals and draws Poisson on the whole part, which
/// keeps the expectation exact even when the per-slice mean is far below 1.
SliceStats step_abs(AgentPopulation& population, double dt, const ModelParams& p,
                    const ActivesTable& actives, Rng& rng, double scale);

/// Per-grid-point ensemble mean and sample standard deviation (cell units).
struct EnsembleStats {
  std::vector<double> t;
  std::vector<double> mean_n, sd_n;
  std::vector<double> mean_np, sd_np;
  std::vector<double> mean_m, sd_m;
  std::vector<double> mean_trec_pct, sd_trec_pct;

  std::size_t size() const { return t.size(); }
  /// Trajectory of the ensemble means (trec is the mean of per-replicate
  /// trec_pct, not a ratio of means).
  Trajectory mean_trajectory() const;
};

struct AbsResult {
  std::vector<Trajectory> replicates;
  EnsembleStats stats;
};

/// Runs the ensemble. Replicate r is seeded by replicate_seed(cfg.seed, r)
/// and owns its RNG stream; replicates run in parallel but results are merged
/// by index, so output is bit-identical for a fixed (seed, replicates, dt,
/// scale) regardless of scheduling. max_workers overrides the thread count
/// (0 = hardware concurrency).
AbsResult run_abs(const AbsConfig& cfg, const ModelParams& p,
                  const ActivesTable& actives, unsigned max_workers = 0);

}  // namespace thymodyn
