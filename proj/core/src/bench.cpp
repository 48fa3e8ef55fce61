#include "thymodyn/bench.hpp"

#include <chrono>
#include <cstdio>

#include <json.hpp>

namespace thymodyn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.scenarios.empty()) throw ConfigError("bench needs at least one scenario");
  std::vector<BenchRow> rows;
  const TrecDataset& ds = TrecDataset::reference();
  const ActivesTable actives;

  for (int sid : options.scenarios) {
    ScenarioSpec spec = ScenarioSpec::preset(sid);
    spec.sd.dt = options.dt;
    spec.sd.horizon = options.horizon;
    spec.abs.dt = options.dt;
    spec.abs.horizon = options.horizon;
    spec.abs.seed = options.seed;
    spec.abs.replicates = options.replicates;
    spec.abs.scale = options.scale;
    const ModelParams params = spec.resolve_params();

    for (const std::string& engine : options.engines) {
      BenchRow row;
      row.scenario = sid;
      row.engine = engine;
      if (engine == "sd") {
        const auto start = Clock::now();
        const Trajectory traj = run_sd(spec.sd, params, actives);
        row.wall_time_s = seconds_since(start);
        row.sse = sse(traj, ds);
      } else if (engine == "abs") {
        const auto start = Clock::now();
        const AbsResult result = run_abs(spec.abs, params, actives);
        row.wall_time_s = seconds_since(start);
        row.sse = sse(result.stats.mean_trajectory(), ds);
      } else {
        throw ConfigError("unknown engine \"" + engine + "\"");
      }
      row.peak_mem_bytes = peak_rss_bytes();
      rows.push_back(row);
    }
  }
  return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::string out = "scenario  engine      time_s     peak_mem_mb        sse\n";
  char line[128];
  for (const BenchRow& row : rows) {
    if (row.peak_mem_bytes)
      std::snprintf(line, sizeof line, "%8d  %-6s  %10.4f  %14.1f  %9.4f\n", row.scenario,
                    row.engine.c_str(), row.wall_time_s,
                    static_cast<double>(*row.peak_mem_bytes) / (1024.0 * 1024.0), row.sse);
    else
      std::snprintf(line, sizeof line, "%8d  %-6s  %10.4f  %14s  %9.4f\n", row.scenario,
                    row.engine.c_str(), row.wall_time_s, "n/a", row.sse);
    out += line;
  }
  return out;
}

std::string bench_to_json(const std::vector<BenchRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const BenchRow& row : rows) {
    nlohmann::json item;
    item["scenario"] = row.scenario;
    item["engine"] = row.engine;
    item["wall_time_s"] = row.wall_time_s;
    if (row.peak_mem_bytes) item["peak_mem_bytes"] = *row.peak_mem_bytes;
    else item["peak_mem_bytes"] = nullptr;
    item["sse"] = row.sse;
    arr.push_back(item);
  }
  return arr.dump(2) + "\n";
}

}  // namespace thymodyn
