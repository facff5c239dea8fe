#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "judgelens/common.hpp"

namespace judgelens::numerics {

struct CalibrationBin {
  double mean_predicted = 0.0;
  double empirical_rate = 0.0;
  std::size_t count = 0;
};

struct CalibrationTable {
  std::vector<CalibrationBin> bins;
  std::size_t total = 0;
  double global_rate = 0.0;

  // Count-weighted mean of the per-bin empirical rates; equals global_rate up
  // to rounding.
  double weighted_empirical_mean() const {
    double acc = 0.0;
    for (const auto& b : bins) acc += static_cast<double>(b.count) * b.empirical_rate;
    return acc / static_cast<double>(total);
  }
};

// Equal-count bins after sorting by prediction. Tied predictions are never
// split across a bin boundary, so identical predictions land in one bin.
inline CalibrationTable calibration_bins(const std::vector<double>& predicted,
                                         const std::vector<int>& outcomes,
                                         std::size_t bins = 50) {
  const std::size_t n = predicted.size();
  if (n != outcomes.size()) throw ConfigError("calibration_bins: length mismatch");
  if (bins == 0) throw ConfigError("calibration_bins: need at least one bin");
  if (bins > n) throw ConfigError("calibration_bins: more bins than observations");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return predicted[a] < predicted[b]; });

  CalibrationTable table;
  table.total = n;
  std::size_t positives = 0;
  for (const int y : outcomes) positives += (y == 1);
  table.global_rate = static_cast<double>(positives) / static_cast<double>(n);

  std::size_t start = 0;
  for (std::size_t b = 0; b < bins && start < n; ++b) {
    std::size_t end = std::max((b + 1) * n / bins, start + 1);
    while (end < n && predicted[order[end]] == predicted[order[end - 1]]) ++end;
    double sum_pred = 0.0;
    std::size_t sum_pos = 0;
    for (std::size_t t = start; t < end; ++t) {
      sum_pred += predicted[order[t]];
      sum_pos += (outcomes[order[t]] == 1);
    }
    CalibrationBin bin;
    bin.count = end - start;
    bin.mean_predicted = sum_pred / static_cast<double>(bin.count);
    bin.empirical_rate = static_cast<double>(sum_pos) / static_cast<double>(bin.count);
    table.bins.push_back(bin);
    start = end;
  }
  return table;
}

}  // namespace judgelens::numerics
