#include "thymodyn/abs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace thymodyn {

void AbsConfig::validate(const ModelParams& p) const {
  p.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("AbsConfig.dt must be > 0");
  if (!(dt <= record_every)) throw ConfigError("AbsConfig.record_every must be >= dt");
  if (!(record_every <= horizon)) throw ConfigError("AbsConfig.horizon must be >= record_every");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("AbsConfig.scale must be > 0");
  if (initial_naive < 0) throw ConfigError("AbsConfig.initial_naive must be >= 0");
  if (replicates < 1) throw ConfigError("AbsConfig.replicates must be >= 1");

  // Worst case of the per-agent competing-probability sums over a slice;
  // g <= 1+b, h <= 1, so nothing at runtime can exceed these.
  const double worst_rate = std::max({p.lambda_n + p.mu_n * (1.0 + p.b),
                                      p.mu_np + p.c,
                                      p.mu_m + p.lambda_mn});
  if (worst_rate * dt > 0.1)
    throw ConfigError("AbsConfig.dt too large: largest competing rate " +
                      std::to_string(worst_rate) + "/year gives rate*dt = " +
                      std::to_string(worst_rate * dt) + " > 0.1");
}

namespace {

/// Competing risks [primary | secondary | nothing] on `count` agents,
/// partitioned as one multinomial: primary ~ Bin(count, p1), then
/// secondary ~ Bin(count - primary, p2/(1-p1)).
struct Competing {
  std::int64_t primary = 0;
  std::int64_t secondary = 0;
};

Competing compete(Rng& rng, std::int64_t count, double p1, double p2) {
  if (p1 + p2 > 1.0)
    throw EngineError("competing transition probabilities exceed 1 (dt too large)");
  Competing out;
  if (count == 0) return out;
  out.primary = p1 > 0.0 ? rng.binomial(count, p1) : 0;
  if (p2 > 0.0 && out.primary < count) {
    const double cond = p1 < 1.0 ? p2 / (1.0 - p1) : 0.0;
    out.secondary = rng.binomial(count - out.primary, std::min(cond, 1.0));
  }
  return out;
}

/// Accumulate expected arrivals; draw Poisson on the whole part so the
/// long-run expectation stays exact even when expected << 1 per slice.
std::int64_t accumulated_poisson(Rng& rng, double& accumulator, double expected) {
  accumulator += expected;
  const double whole = std::floor(accumulator);
  accumulator -= whole;
  return whole > 0.0 ? rng.poisson(whole) : 0;
}

}  // namespace

SliceStats step_abs(AgentPopulation& population, double dt, const ModelParams& p,
                    const ActivesTable& actives, Rng& rng, double scale) {
  const double n_cells = static_cast<double>(population.naive) * scale;
  const double np_cells = static_cast<double>(population.naive_prolif) * scale;
  const double g = death_modifier(np_cells, p);
  const double h = dilution_modifier(n_cells, np_cells, p);

  SliceStats stats;
  stats.thymic_births = accumulated_poisson(
      rng, population.thymic_accumulator,
      thymic_export_rate(population.t, np_cells, p) * dt / scale);

  const Competing naive = compete(rng, population.naive, p.mu_n * g * dt, p.lambda_n * dt);
  stats.naive_deaths = naive.primary;
  stats.conversions = naive.secondary;

  const Competing prolif = compete(rng, population.naive_prolif, p.mu_np * dt, p.c * h * dt);
  stats.prolif_deaths = prolif.primary;
  stats.spawns = prolif.secondary;  // newborn agents join their parents' state

  const Competing memory = compete(rng, population.memory, p.mu_m * dt, p.lambda_mn * dt);
  stats.memory_deaths = memory.primary;
  stats.reversions = memory.secondary;

  stats.memory_influx = accumulated_poisson(
      rng, population.memory_accumulator,
      p.lambda_a * actives.at(population.t) * dt / scale);

  population.naive += stats.thymic_births - stats.naive_deaths - stats.conversions;
  population.naive_prolif += stats.conversions + stats.spawns - stats.prolif_deaths + stats.reversions;
  population.memory += stats.memory_influx - stats.memory_deaths - stats.reversions;
  population.t += dt;
  return stats;
}

namespace {

Trajectory run_replicate(const AbsConfig& cfg, const ModelParams& p,
                         const ActivesTable& actives, int replicate) {
  Rng rng(replicate_seed(cfg.seed, replicate));

  AgentPopulation popn;
  popn.naive = static_cast<std::int64_t>(
      std::llround(static_cast<double>(cfg.initial_naive) / cfg.scale));

  const long long steps_per_record =
      std::max(1LL, static_cast<long long>(std::llround(cfg.record_every / cfg.dt)));
  const long long total_steps = static_cast<long long>(std::llround(cfg.horizon / cfg.dt));

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(total_steps / steps_per_record) + 2);
  const auto record = [&](long long step) {
    const double t = static_cast<double>(step) * cfg.dt;
    const double n = static_cast<double>(popn.naive) * cfg.scale;
    const double np = static_cast<double>(popn.naive_prolif) * cfg.scale;
    const double m = static_cast<double>(popn.memory) * cfg.scale;
    traj.samples.push_back({t, n, np, m, trec_percentage(n, np)});
  };
  record(0);

  for (long long i = 1; i <= total_steps; ++i) {
    const std::int64_t before = popn.total();
    const SliceStats stats = step_abs(popn, cfg.dt, p, actives, rng, cfg.scale);
    if (popn.total() - before != stats.births() - stats.deaths())
      throw EngineError("agent-count conservation violated at t = " + std::to_string(popn.t));
    popn.t = static_cast<double>(i) * cfg.dt;
    if (i % steps_per_record == 0 || i == total_steps) record(i);
  }
  return traj;
}

double sample_sd(double sum, double sum_sq, int count) {
  if (count < 2) return 0.0;
  const double mean = sum / count;
  const double var = (sum_sq - sum * mean) / (count - 1);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace

Trajectory EnsembleStats::mean_trajectory() const {
  Trajectory traj;
  traj.samples.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    traj.samples.push_back({t[i], mean_n[i], mean_np[i], mean_m[i], mean_trec_pct[i]});
  return traj;
}

AbsResult run_abs(const AbsConfig& cfg, const ModelParams& p, const ActivesTable& actives,
                  unsigned max_workers) {
  cfg.validate(p);

  AbsResult result;
  result.replicates.resize(static_cast<std::size_t>(cfg.replicates));

  // Replicates are independent; each owns its RNG stream and result slot,
  // so the schedule cannot change the output.
  if (max_workers == 0) max_workers = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(max_workers, static_cast<unsigned>(cfg.replicates));
  if (workers <= 1) {
    for (int r = 0; r < cfg.replicates; ++r)
      result.replicates[static_cast<std::size_t>(r)] = run_replicate(cfg, p, actives, r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < cfg.replicates; r = next.fetch_add(1)) {
          try {
            result.replicates[static_cast<std::size_t>(r)] = run_replicate(cfg, p, actives, r);
          } catch (...) {
            failed = true;
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failed) throw EngineError("an ABS replicate failed");
  }

  // Merge in replicate order (fixed summation order keeps stats bit-stable).
  const std::size_t points = result.replicates.front().samples.size();
  EnsembleStats& stats = result.stats;
  stats.t.resize(points);
  stats.mean_n.resize(points); stats.sd_n.resize(points);
  stats.mean_np.resize(points); stats.sd_np.resize(points);
  stats.mean_m.resize(points); stats.sd_m.resize(points);
  stats.mean_trec_pct.resize(points); stats.sd_trec_pct.resize(points);

  for (std::size_t i = 0; i < points; ++i) {
    double sn = 0, sn2 = 0, sp = 0, sp2 = 0, sm = 0, sm2 = 0, st = 0, st2 = 0;
    for (const Trajectory& traj : result.replicates) {
      const TrajectorySample& s = traj.samples[i];
      sn += s.n; sn2 += s.n * s.n;
      sp += s.np; sp2 += s.np * s.np;
      sm += s.m; sm2 += s.m * s.m;
      st += s.trec_pct; st2 += s.trec_pct * s.trec_pct;
    }
    const int r = cfg.replicates;
    stats.t[i] = result.replicates.front().samples[i].t;
    stats.mean_n[i] = sn / r; stats.sd_n[i] = sample_sd(sn, sn2, r);
    stats.mean_np[i] = sp / r; stats.sd_np[i] = sample_sd(sp, sp2, r);
    stats.mean_m[i] = sm / r; stats.sd_m[i] = sample_sd(sm, sm2, r);
    stats.mean_trec_pct[i] = st / r; stats.sd_trec_pct[i] = sample_sd(st, st2, r);
  }
  return result;
}

}  // namespace thymodyn
