#pragma once

#include <string>
#include <vector>

#include "thymodyn/scenario.hpp"
#include "thymodyn/validation.hpp"

namespace thymodyn {

/// One row of the engine comparison table.
struct BenchRow {
  int scenario = 0;
  std::string engine;
  double wall_time_s = 0.0;
  std::optional<std::int64_t> peak_mem_bytes;
  double sse = 0.0;
};

struct BenchOptions {
  std::vector<int> scenarios{1, 2, 3};
  std::vector<std::string> engines{"sd", "abs"};
  double dt = 1.0 / 1024.0;
  double horizon = 100.0;
  std::uint64_t seed = 1;
  int replicates = 1;
  double scale = 1.0;
};

/// Runs each engine on each scenario sequentially (timings are wall clock
/// around the engine run only, I/O excluded) and reports time, best-effort
/// peak memory and SSE per row.
std::vector<BenchRow> run_bench(const BenchOptions& options);

/// Fixed-width text table of the rows.
std::string bench_table(const std::vector<BenchRow>& rows);
std::string bench_to_json(const std::vector<BenchRow>& rows);

}  // namespace thymodyn
