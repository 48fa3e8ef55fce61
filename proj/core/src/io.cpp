#include "thymodyn/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace thymodyn {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string::size_type pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

double to_double(const std::string& field, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw ConfigError("bad numeric field \"" + field + "\" in " + context);
  return v;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void expect_header(const std::vector<std::string>& lines, const std::string& header,
                   const std::string& context) {
  if (lines.empty() || lines.front() != header)
    throw ConfigError(context + ": expected header \"" + header + "\"");
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << text;
  if (!out) throw ConfigError("write failed: " + path);
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::string out = "t,n,np,m,trec_pct\n";
  for (const TrajectorySample& s : traj.samples)
    out += fmt(s.t) + "," + fmt(s.n) + "," + fmt(s.np) + "," + fmt(s.m) + "," +
           fmt(s.trec_pct) + "\n";
  return out;
}

Trajectory trajectory_from_csv(const std::string& text) {
  const auto lines = csv_lines(text);
  expect_header(lines, "t,n,np,m,trec_pct", "trajectory CSV");
  Trajectory traj;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i]);
    if (fields.size() != 5)
      throw ConfigError("trajectory CSV row " + std::to_string(i) + " must have 5 fields");
    TrajectorySample s;
    s.t = to_double(fields[0], "trajectory CSV");
    s.n = to_double(fields[1], "trajectory CSV");
    s.np = to_double(fields[2], "trajectory CSV");
    s.m = to_double(fields[3], "trajectory CSV");
    s.trec_pct = to_double(fields[4], "trajectory CSV");
    traj.samples.push_back(s);
  }
  return traj;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  write_text_file(path, trajectory_to_csv(traj));
}

Trajectory read_trajectory_csv(const std::string& path) {
  return trajectory_from_csv(read_text_file(path));
}

std::string ensemble_to_csv(const EnsembleStats& stats) {
  std::string out = "t,mean_n,sd_n,mean_np,sd_np,mean_m,sd_m,mean_trec_pct,sd_trec_pct\n";
  for (std::size_t i = 0; i < stats.size(); ++i)
    out += fmt(stats.t[i]) + "," + fmt(stats.mean_n[i]) + "," + fmt(stats.sd_n[i]) + "," +
           fmt(stats.mean_np[i]) + "," + fmt(stats.sd_np[i]) + "," + fmt(stats.mean_m[i]) + "," +
           fmt(stats.sd_m[i]) + "," + fmt(stats.mean_trec_pct[i]) + "," +
           fmt(stats.sd_trec_pct[i]) + "\n";
  return out;
}

EnsembleStats ensemble_from_csv(const std::string& text) {
  const auto lines = csv_lines(text);
  expect_header(lines, "t,mean_n,sd_n,mean_np,sd_np,mean_m,sd_m,mean_trec_pct,sd_trec_pct",
                "ensemble CSV");
  EnsembleStats stats;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i]);
    if (fields.size() != 9)
      throw ConfigError("ensemble CSV row " + std::to_string(i) + " must have 9 fields");
    const auto get = [&](std::size_t k) { return to_double(fields[k], "ensemble CSV"); };
    stats.t.push_back(get(0));
    stats.mean_n.push_back(get(1)); stats.sd_n.push_back(get(2));
    stats.mean_np.push_back(get(3)); stats.sd_np.push_back(get(4));
    stats.mean_m.push_back(get(5)); stats.sd_m.push_back(get(6));
    stats.mean_trec_pct.push_back(get(7)); stats.sd_trec_pct.push_back(get(8));
  }
  return stats;
}

void write_ensemble_csv(const std::string& path, const EnsembleStats& stats) {
  write_text_file(path, ensemble_to_csv(stats));
}

EnsembleStats read_ensemble_csv(const std::string& path) {
  return ensemble_from_csv(read_text_file(path));
}

std::string dataset_to_csv(const TrecDataset& ds) {
  std::string out = "age_lo,age_hi,log10_trec,n\n";
  for (const TrecBin& bin : ds.bins)
    out += fmt(bin.age_lo) + "," + fmt(bin.age_hi) + "," + fmt(bin.log10_trec) + "," +
           std::to_string(bin.individuals) + "\n";
  return out;
}

void write_dataset_csv(const std::string& path, const TrecDataset& ds) {
  write_text_file(path, dataset_to_csv(ds));
}

ActivesTable actives_from_csv(const std::string& text) {
  const auto lines = csv_lines(text);
  expect_header(lines, "age_years,active_cells_per_mm3", "actives CSV");
  std::vector<ActivesTable::Knot> knots;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i]);
    if (fields.size() != 2)
      throw ConfigError("actives CSV row " + std::to_string(i) + " must have 2 fields");
    knots.push_back({to_double(fields[0], "actives CSV"), to_double(fields[1], "actives CSV")});
  }
  return ActivesTable(std::move(knots));  // checks ordering and signs
}

ActivesTable read_actives_csv(const std::string& path) {
  return actives_from_csv(read_text_file(path));
}

std::string fit_report_to_json(const FitReport& report) {
  json root;
  root["scenario"] = report.scenario;
  root["engine"] = report.engine;
  root["sse"] = report.sse;
  root["sse_space"] = to_string(report.sse_space);
  root["wall_time_s"] = report.wall_time_s;
  if (report.peak_mem_bytes) root["peak_mem_bytes"] = *report.peak_mem_bytes;
  else root["peak_mem_bytes"] = nullptr;
  root["residuals"] = report.residuals;
  return root.dump(2) + "\n";
}

FitReport fit_report_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  FitReport report;
  report.scenario = root.at("scenario").get<std::string>();
  report.engine = root.at("engine").get<std::string>();
  report.sse = root.at("sse").get<double>();
  const std::string space = root.value("sse_space", "log10_pct");
  report.sse_space = space == "linear_pct" ? SseSpace::linear_pct : SseSpace::log10_pct;
  report.wall_time_s = root.at("wall_time_s").get<double>();
  if (root.contains("peak_mem_bytes") && !root.at("peak_mem_bytes").is_null())
    report.peak_mem_bytes = root.at("peak_mem_bytes").get<std::int64_t>();
  report.residuals = root.at("residuals").get<std::vector<double>>();
  return report;
}

void write_fit_report_json(const std::string& path, const FitReport& report) {
  write_text_file(path, fit_report_to_json(report));
}

FitReport read_fit_report_json(const std::string& path) {
  return fit_report_from_json(read_text_file(path));
}

std::string plot_overlay_csv(const Trajectory& traj, const TrecDataset& ds) {
  std::string out = "series,x,y\n";
  for (const TrajectorySample& s : traj.samples)
    out += "model," + fmt(s.t) + "," + fmt(s.trec_pct) + "\n";
  for (const AgePercentage& point : dataset_to_percentage(ds))
    out += "dataset," + fmt(point.age) + "," + fmt(point.pct) + "\n";
  return out;
}

void write_plot_overlay_csv(const std::string& path, const Trajectory& traj,
                            const TrecDataset& ds) {
  write_text_file(path, plot_overlay_csv(traj, ds));
}

}  // namespace thymodyn
