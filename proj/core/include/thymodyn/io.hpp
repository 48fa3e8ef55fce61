#pragma once

#include <string>

#include "thymodyn/abs.hpp"
#include "thymodyn/dataset.hpp"
#include "thymodyn/model.hpp"
#include "thymodyn/trajectory.hpp"
#include "thymodyn/validation.hpp"

namespace thymodyn {

// All writers emit full-precision decimals (%.17g) so values survive the
// round trip bit-exactly.

/// Header: t,n,np,m,trec_pct
std::string trajectory_to_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& text);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

/// Header: t,mean_n,sd_n,mean_np,sd_np,mean_m,sd_m,mean_trec_pct,sd_trec_pct
std::string ensemble_to_csv(const EnsembleStats& stats);
EnsembleStats ensemble_from_csv(const std::string& text);
void write_ensemble_csv(const std::string& path, const EnsembleStats& stats);
EnsembleStats read_ensemble_csv(const std::string& path);

/// Header: age_lo,age_hi,log10_trec,n
std::string dataset_to_csv(const TrecDataset& ds);
void write_dataset_csv(const std::string& path, const TrecDataset& ds);

/// Header: age_years,active_cells_per_mm3 — ages must be strictly
/// increasing, cells >= 0.
ActivesTable actives_from_csv(const std::string& text);
ActivesTable read_actives_csv(const std::string& path);

/// FitReport JSON: scenario, engine, sse, sse_space, wall_time_s,
/// peak_mem_bytes (null when absent), residuals[].
std::string fit_report_to_json(const FitReport& report);
FitReport fit_report_from_json(const std::string& text);
void write_fit_report_json(const std::string& path, const FitReport& report);
FitReport read_fit_report_json(const std::string& path);

/// Plot overlay: series,x,y with a "model" row per trajectory sample and a
/// "dataset" row per survey bin.
std::string plot_overlay_csv(const Trajectory& traj, const TrecDataset& ds);
void write_plot_overlay_csv(const std::string& path, const Trajectory& traj,
                            const TrecDataset& ds);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace thymodyn
