#include "thymodyn/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "thymodyn/model.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

namespace thymodyn {

const char* to_string(SseSpace space) {
  return space == SseSpace::log10_pct ? "log10_pct" : "linear_pct";
}

double sse(const Trajectory& traj, const TrecDataset& ds, SseSpace space,
           std::vector<double>* residuals) {
  if (residuals) residuals->clear();
  const std::vector<AgePercentage> points = dataset_to_percentage(ds);
  if (!points.empty() && (traj.end_time() < points.back().age || traj.start_time() > points.front().age))
    throw EngineError("trajectory horizon [" + std::to_string(traj.start_time()) + ", " +
                      std::to_string(traj.end_time()) + "] does not cover the dataset ages");

  // Percentages are anchored at 100 and decay by orders of magnitude; the
  // log floor only guards an exactly-zero model pool.
  constexpr double kLogFloor = 1e-12;
  double total = 0.0;
  for (const AgePercentage& point : points) {
    const double model = traj.trec_at(point.age);
    const double r = space == SseSpace::linear_pct
                         ? model - point.pct
                         : std::log10(std::max(model, kLogFloor)) - std::log10(point.pct);
    total += r * r;
    if (residuals) residuals->push_back(r);
  }
  return total;
}

FitReport make_fit_report(const std::string& scenario, const std::string& engine,
                          const Trajectory& traj, const TrecDataset& ds,
                          double wall_time_s,
                          std::optional<std::int64_t> peak_mem_bytes, SseSpace space) {
  FitReport report;
  report.scenario = scenario;
  report.engine = engine;
  report.sse_space = space;
  report.sse = sse(traj, ds, space, &report.residuals);
  report.wall_time_s = wall_time_s;
  report.peak_mem_bytes = peak_mem_bytes;
  return report;
}

ComparisonSummary compare_engines(const FitReport& sd_report, const FitReport& abs_report) {
  if (sd_report.scenario != abs_report.scenario)
    throw ConfigError("compare_engines: reports are for different scenarios");
  const auto ratio = [](double num, double den) {
    if (num == den) return 1.0;
    return den != 0.0 ? num / den : std::numeric_limits<double>::infinity();
  };
  ComparisonSummary out;
  out.scenario = sd_report.scenario;
  out.sse_ratio = ratio(abs_report.sse, sd_report.sse);
  out.time_ratio = ratio(abs_report.wall_time_s, sd_report.wall_time_s);
  if (sd_report.peak_mem_bytes && abs_report.peak_mem_bytes)
    out.mem_ratio = ratio(static_cast<double>(*abs_report.peak_mem_bytes),
                          static_cast<double>(*sd_report.peak_mem_bytes));
  out.sd_cheaper = sd_report.wall_time_s < abs_report.wall_time_s;
  return out;
}

namespace {

struct Extremum {
  double t = 0.0;
  double value = 0.0;
};

Extremum peak(const Trajectory& traj, double TrajectorySample::*field) {
  Extremum best;
  for (const TrajectorySample& s : traj.samples)
    if (s.*field > best.value) best = {s.t, s.*field};
  return best;
}

/// (max - min)/max over samples with t in [lo, hi]; 0 when the window peak
/// is 0 (so a dead pool never counts as a plateau via this metric alone).
double window_relative_change(const Trajectory& traj, double TrajectorySample::*field,
                              double lo, double hi) {
  double mx = 0.0, mn = std::numeric_limits<double>::infinity();
  for (const TrajectorySample& s : traj.samples) {
    if (s.t < lo || s.t > hi) continue;
    mx = std::max(mx, s.*field);
    mn = std::min(mn, s.*field);
  }
  if (!(mx > 0.0) || !std::isfinite(mn)) return 0.0;
  return (mx - mn) / mx;
}

/// Exponential decay rate between two interpolated points; +inf when either
/// value is not positive.
double decay_rate(const Trajectory& traj, char stock, double t0, double t1) {
  const double v0 = traj.stock_at(t0, stock);
  const double v1 = traj.stock_at(t1, stock);
  if (!(v0 > 0.0) || !(v1 > 0.0)) return std::numeric_limits<double>::infinity();
  return std::log(v0 / v1) / (t1 - t0);
}

struct LogLinearFit {
  bool valid = false;
  double slope = 0.0;
  double max_abs_residual = 0.0;
};

LogLinearFit fit_log_linear(const Trajectory& traj, double TrajectorySample::*field,
                            double lo, double hi) {
  std::vector<double> ts, logs;
  for (const TrajectorySample& s : traj.samples) {
    if (s.t < lo || s.t > hi) continue;
    if (!(s.*field > 0.0)) return {};
    ts.push_back(s.t);
    logs.push_back(std::log(s.*field));
  }
  if (ts.size() < 8) return {};
  const double n = static_cast<double>(ts.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i]; sy += logs[i];
    stt += ts[i] * ts[i]; sty += ts[i] * logs[i];
  }
  LogLinearFit fit;
  const double denom = n * stt - st * st;
  if (denom == 0.0) return {};
  fit.slope = (n * sty - st * sy) / denom;
  const double intercept = (sy - fit.slope * st) / n;
  for (std::size_t i = 0; i < ts.size(); ++i)
    fit.max_abs_residual = std::max(fit.max_abs_residual,
                                    std::abs(logs[i] - (intercept + fit.slope * ts[i])));
  fit.valid = true;
  return fit;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::vector<Finding> qualitative_checks(const std::map<int, Trajectory>& traj_by_scenario,
                                        double lambda_t) {
  for (int sid : {1, 2, 3})
    if (!traj_by_scenario.count(sid))
      throw ConfigError("qualitative_checks needs trajectories for scenarios 1, 2 and 3");

  std::vector<Finding> findings;
  const auto add = [&](std::string name, int scenario, bool pass, std::string detail) {
    findings.push_back({std::move(name), scenario, pass, std::move(detail)});
  };

  {
    const Trajectory& s1 = traj_by_scenario.at(1);
    const Extremum pk = peak(s1, &TrajectorySample::np);
    const double end_np = s1.samples.back().np;
    const double late_change = window_relative_change(s1, &TrajectorySample::np, 60.0, 100.0);
    const bool interior_peak = pk.value > 0.0 && pk.t > s1.start_time() && pk.t < 40.0;
    const bool decays = interior_peak && end_np < 0.5 * pk.value;
    const bool no_plateau = late_change > 0.20;
    add("s1_np_peak_then_decay", 1, interior_peak && decays && no_plateau,
        "peak " + fmt(pk.value) + " at t=" + fmt(pk.t) + ", end/peak=" +
            fmt(pk.value > 0 ? end_np / pk.value : 0.0) + ", [60,100] change=" +
            fmt(100 * late_change) + "%");
  }
  {
    const Trajectory& s2 = traj_by_scenario.at(2);
    const double change = window_relative_change(s2, &TrajectorySample::np, 60.0, 100.0);
    const bool populated = s2.stock_at(80.0, 'p') > 0.0;
    add("s2_np_plateau", 2, populated && change < 0.02,
        "[60,100] relative change = " + fmt(100 * change) + "% (< 2% required)");
    const double rate = decay_rate(s2, 'p', 60.0, 100.0);
    add("s2_np_source_decoupled", 2, rate < lambda_t / 3.0,
        "late decay rate " + fmt(rate) + "/yr vs thymic trend " + fmt(lambda_t) + "/yr");
  }
  {
    const Trajectory& s3 = traj_by_scenario.at(3);
    const Extremum pk = peak(s3, &TrajectorySample::n);
    const double n20 = s3.stock_at(20.0, 'n');
    add("s3_n_early_decay", 3, pk.value > 0.0 && pk.t < 10.0 && n20 < 0.5 * pk.value,
        "N peak " + fmt(pk.value) + " at t=" + fmt(pk.t) + ", N(20)/peak=" +
            fmt(pk.value > 0 ? n20 / pk.value : 0.0));
    const double early_rate = decay_rate(s3, 'n', 1.0, 12.0);
    const double mid_rate = decay_rate(s3, 'n', 15.0, 25.0);
    add("s3_n_midlife_stability", 3,
        std::isfinite(early_rate) && std::isfinite(mid_rate) && early_rate > 0.0 &&
            mid_rate < 0.5 * early_rate,
        "decline rate [15,25] = " + fmt(mid_rate) + "/yr vs [1,12] = " + fmt(early_rate) + "/yr");
    const LogLinearFit fit = fit_log_linear(s3, &TrajectorySample::n, 30.0, 100.0);
    const bool slope_ok = fit.valid && fit.slope > -1.25 * lambda_t && fit.slope < -0.75 * lambda_t;
    add("s3_n_late_exponential", 3, slope_ok && fit.max_abs_residual < 0.05,
        fit.valid ? "log N slope [30,100] = " + fmt(fit.slope) + " (thymic trend " +
                        fmt(-lambda_t) + "), max log residual " + fmt(fit.max_abs_residual)
                  : "no positive N samples in [30,100]");
  }
  return findings;
}

std::optional<std::int64_t> peak_rss_bytes() {
#if defined(__unix__) || defined(__APPLE__)
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return std::nullopt;
#if defined(__APPLE__)
  return static_cast<std::int64_t>(usage.ru_maxrss);  // bytes
#else
  return static_cast<std::int64_t>(usage.ru_maxrss) * 1024;  // kilobytes
#endif
#else
  return std::nullopt;
#endif
}

}  // namespace thymodyn
