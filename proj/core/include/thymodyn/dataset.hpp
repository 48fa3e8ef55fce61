#pragma once

#include <vector>

namespace thymodyn {

/// One age group of the reference TREC survey: mean log10 TREC per 10^6 PBMC
/// and the number of individuals sampled in the group.
struct TrecBin {
  double age_lo = 0.0;
  double age_hi = 0.0;
  double log10_trec = 0.0;
  int individuals = 0;

  /// Bin midpoint; the birth bin (0-0) maps to age 0.
  double age_mid() const { return age_lo == 0.0 && age_hi == 0.0 ? 0.0 : 0.5 * (age_lo + age_hi); }
};

struct TrecDataset {
  std::vector<TrecBin> bins;

  int total_individuals() const;
  /// The bundled 12-bin survey (ages 0 through 50-54, 506 individuals).
  static const TrecDataset& reference();
};

struct AgePercentage {
  double age = 0.0;
  double pct = 0.0;
};

/// Converts the log10 TREC series into percentages of thymus-origin naive
/// cells, self-normalized to the birth bin:
/// pct(age) = 100 * 10^(v(age) - v(0)), evaluated at bin midpoints.
std::vector<AgePercentage> dataset_to_percentage(const TrecDataset& ds);

}  // namespace thymodyn
