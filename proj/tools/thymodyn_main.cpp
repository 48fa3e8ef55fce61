// thymodyn command line front end: scenario runs, engine benchmarks and
// plot-data export. Exit codes: 0 success, 2 configuration error, 3 engine
// or numeric error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thymodyn/bench.hpp"
#include "thymodyn/io.hpp"
#include "thymodyn/scenario.hpp"

namespace fs = std::filesystem;
using namespace thymodyn;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitEngine = 3;

using Clock = std::chrono::steady_clock;

struct CommonFlags {
  int scenario = 0;
  std::string config_path;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<double> scale;
  std::string actives_path;
  std::string out_dir;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("THYMODYN_OUT"); env && *env) return env;
  return "thymodyn_out";
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_abs_flags) {
  cmd->add_option("--scenario", flags.scenario, "Scenario preset {1|2|3}")
      ->check(CLI::Range(1, 3));
  cmd->add_option("--config", flags.config_path, "JSON scenario config file");
  cmd->add_option("--dt", flags.dt, "Integration / slice step, years");
  cmd->add_option("--horizon", flags.horizon, "Simulated horizon, years");
  if (with_abs_flags) {
    cmd->add_option("--seed", flags.seed, "Ensemble RNG seed");
    cmd->add_option("--replicates", flags.replicates, "Ensemble size");
    cmd->add_option("--scale", flags.scale, "Cells represented per agent");
  }
  cmd->add_option("--actives", flags.actives_path, "Activated-CD4 lookup table CSV");
  cmd->add_option("--out", flags.out_dir, "Output directory (default $THYMODYN_OUT)");
}

ScenarioSpec build_spec(const CommonFlags& flags) {
  if (!flags.config_path.empty() && flags.scenario != 0)
    throw ConfigError("use either --scenario or --config, not both");
  ScenarioSpec spec;
  if (!flags.config_path.empty()) spec = parse_config(flags.config_path);
  else if (flags.scenario != 0) spec = ScenarioSpec::preset(flags.scenario);
  else throw ConfigError("one of --scenario or --config is required");

  if (flags.dt) { spec.sd.dt = *flags.dt; spec.abs.dt = *flags.dt; }
  if (flags.horizon) { spec.sd.horizon = *flags.horizon; spec.abs.horizon = *flags.horizon; }
  if (flags.seed) spec.abs.seed = *flags.seed;
  if (flags.replicates) spec.abs.replicates = *flags.replicates;
  if (flags.scale) spec.abs.scale = *flags.scale;
  if (!flags.actives_path.empty()) spec.actives_path = flags.actives_path;
  return spec;
}

ActivesTable load_actives(const ScenarioSpec& spec) {
  if (spec.actives_path.empty()) return ActivesTable();
  return read_actives_csv(spec.actives_path);
}

fs::path ensure_out_dir(const CommonFlags& flags) {
  const fs::path dir = flags.out_dir.empty() ? default_out_dir() : flags.out_dir;
  fs::create_directories(dir);
  return dir;
}

int cmd_run(const std::string& engine, const CommonFlags& flags) {
  const ScenarioSpec spec = build_spec(flags);
  const ModelParams params = spec.resolve_params();
  const ActivesTable actives = load_actives(spec);
  const TrecDataset& ds = TrecDataset::reference();
  const fs::path out = ensure_out_dir(flags);
  const std::string label = spec.scenario_label();
  const std::string prefix = engine + "_scenario" + label + "_";

  if (engine == "sd") {
    const auto start = Clock::now();
    const Trajectory traj = run_sd(spec.sd, params, actives);
    const double wall = std::chrono::duration<double>(Clock::now() - start).count();
    write_trajectory_csv((out / (prefix + "trajectory.csv")).string(), traj);
    const FitReport report =
        make_fit_report(label, "sd", traj, ds, wall, peak_rss_bytes());
    write_fit_report_json((out / (prefix + "report.json")).string(), report);
    if (!traj.clamps.empty())
      std::cerr << "note: " << traj.clamps.size() << " negative-stock clamp event(s)\n";
    std::cout << "sd scenario " << label << ": sse=" << report.sse << " ("
              << to_string(report.sse_space) << "), wall=" << wall << " s, "
              << traj.samples.size() << " samples -> " << out.string() << "\n";
  } else {
    const auto start = Clock::now();
    const AbsResult result = run_abs(spec.abs, params, actives);
    const double wall = std::chrono::duration<double>(Clock::now() - start).count();
    for (std::size_t r = 0; r < result.replicates.size(); ++r) {
      char name[64];
      std::snprintf(name, sizeof name, "rep%03zu.csv", r);
      write_trajectory_csv((out / (prefix + name)).string(), result.replicates[r]);
    }
    write_ensemble_csv((out / (prefix + "ensemble.csv")).string(), result.stats);
    const FitReport report = make_fit_report(label, "abs", result.stats.mean_trajectory(),
                                             ds, wall, peak_rss_bytes());
    write_fit_report_json((out / (prefix + "report.json")).string(), report);
    std::cout << "abs scenario " << label << ": " << result.replicates.size()
              << " replicate(s), sse=" << report.sse << " (" << to_string(report.sse_space)
              << "), wall=" << wall << " s -> " << out.string() << "\n";
  }
  return 0;
}

int cmd_bench(const CommonFlags& flags, std::vector<int> scenarios, const std::string& engine) {
  BenchOptions options;
  if (!scenarios.empty()) options.scenarios = std::move(scenarios);
  if (!engine.empty()) options.engines = {engine};
  if (flags.dt) options.dt = *flags.dt;
  if (flags.horizon) options.horizon = *flags.horizon;
  if (flags.seed) options.seed = *flags.seed;
  if (flags.replicates) options.replicates = *flags.replicates;
  if (flags.scale) options.scale = *flags.scale;

  const std::vector<BenchRow> rows = run_bench(options);
  std::cout << bench_table(rows);
  const fs::path out = ensure_out_dir(flags);
  write_text_file((out / "bench.json").string(), bench_to_json(rows));
  std::cout << "wrote " << (out / "bench.json").string() << "\n";
  return 0;
}

int cmd_plotdata(const CommonFlags& flags) {
  const fs::path out = flags.out_dir.empty() ? default_out_dir() : flags.out_dir;
  if (!fs::is_directory(out))
    throw ConfigError("output directory does not exist: " + out.string());
  const TrecDataset& ds = TrecDataset::reference();

  int written = 0;
  for (const auto& entry : fs::directory_iterator(out)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const auto emit = [&](const Trajectory& traj, const std::string& stem) {
      write_plot_overlay_csv((out / ("plot_" + stem + ".csv")).string(), traj, ds);
      ++written;
    };
    if (name.starts_with("sd_scenario") && name.ends_with("_trajectory.csv"))
      emit(read_trajectory_csv(entry.path().string()),
           name.substr(0, name.size() - std::string("_trajectory.csv").size()));
    else if (name.starts_with("abs_scenario") && name.ends_with("_ensemble.csv"))
      emit(read_ensemble_csv(entry.path().string()).mean_trajectory(),
           name.substr(0, name.size() - std::string("_ensemble.csv").size()));
  }
  if (written == 0)
    throw ConfigError("no run outputs found in " + out.string() +
                      " (run `thymodyn run` first)");
  std::cout << "wrote " << written << " overlay file(s) to " << out.string() << "\n";
  return 0;
}

int cmd_dataset(const CommonFlags& flags) {
  const fs::path out = ensure_out_dir(flags);
  write_dataset_csv((out / "trec_dataset.csv").string(), TrecDataset::reference());
  std::cout << "wrote " << (out / "trec_dataset.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Naive T-cell repertoire aging simulator (stock-flow and agent-based engines)"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string run_engine;
  CLI::App* run = app.add_subcommand("run", "Run one engine on a scenario and write CSV/JSON outputs");
  run->add_option("engine", run_engine, "Engine {sd|abs}")
      ->required()
      ->check(CLI::IsMember({"sd", "abs"}));
  add_common_flags(run, run_flags, true);

  CommonFlags bench_flags;
  std::vector<int> bench_scenarios;
  std::string bench_engine;
  CLI::App* bench = app.add_subcommand("bench", "Time SD vs ABS per scenario and report SSE");
  bench->add_option("--scenario", bench_scenarios, "Scenario subset (default 1 2 3)")
      ->check(CLI::Range(1, 3));
  bench->add_option("--engine", bench_engine, "Restrict to one engine {sd|abs}")
      ->check(CLI::IsMember({"sd", "abs"}));
  bench->add_option("--dt", bench_flags.dt, "Step size, years");
  bench->add_option("--horizon", bench_flags.horizon, "Horizon, years");
  bench->add_option("--seed", bench_flags.seed, "ABS ensemble seed");
  bench->add_option("--replicates", bench_flags.replicates, "ABS ensemble size (default 1)");
  bench->add_option("--scale", bench_flags.scale, "ABS cells per agent");
  bench->add_option("--out", bench_flags.out_dir, "Output directory (default $THYMODYN_OUT)");

  CommonFlags plot_flags;
  CLI::App* plot = app.add_subcommand("plotdata", "Emit model-vs-dataset overlay files from prior runs");
  plot->add_option("--out", plot_flags.out_dir, "Directory holding run outputs");

  CommonFlags dataset_flags;
  CLI::App* dataset = app.add_subcommand("dataset", "Export the bundled TREC survey as CSV");
  dataset->add_option("--out", dataset_flags.out_dir, "Output directory (default $THYMODYN_OUT)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_engine, run_flags);
    if (bench->parsed()) return cmd_bench(bench_flags, bench_scenarios, bench_engine);
    if (plot->parsed()) return cmd_plotdata(plot_flags);
    if (dataset->parsed()) return cmd_dataset(dataset_flags);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const EngineError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitEngine;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEngine;
  }
  return 0;
}
