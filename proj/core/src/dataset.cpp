#include "thymodyn/dataset.hpp"

#include <cmath>

namespace thymodyn {

int TrecDataset::total_individuals() const {
  int total = 0;
  for (const TrecBin& bin : bins) total += bin.individuals;
  return total;
}

const TrecDataset& TrecDataset::reference() {
  // Mean log10 TREC per 10^6 PBMC by age group; 506 individuals in total.
  static const TrecDataset ds{{
      {0, 0, 5.03, 48},
      {1, 4, 4.93, 53},
      {5, 9, 4.86, 19},
      {10, 14, 4.86, 19},
      {15, 19, 4.56, 33},
      {20, 24, 3.88, 26},
      {25, 29, 3.75, 47},
      {30, 34, 3.61, 65},
      {35, 39, 3.54, 73},
      {40, 44, 3.52, 52},
      {45, 49, 3.37, 55},
      {50, 54, 3.17, 16},
  }};
  return ds;
}

std::vector<AgePercentage> dataset_to_percentage(const TrecDataset& ds) {
  std::vector<AgePercentage> out;
  out.reserve(ds.bins.size());
  if (ds.bins.empty()) return out;
  const double v0 = ds.bins.front().log10_trec;
  for (const TrecBin& bin : ds.bins)
    out.push_back({bin.age_mid(), 100.0 * std::pow(10.0, bin.log10_trec - v0)});
  return out;
}

}  // namespace thymodyn
