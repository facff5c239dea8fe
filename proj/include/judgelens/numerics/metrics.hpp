#pragma once

#include <cmath>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/numerics/ranks.hpp"

namespace judgelens::numerics {

// Strict threshold: exactly 0.5 binarizes to class 0.
inline int binarize(double p, double threshold = 0.5) { return p > threshold ? 1 : 0; }

inline double accuracy(const std::vector<int>& predictions, const std::vector<int>& truths) {
  if (predictions.size() != truths.size() || predictions.empty())
    throw ConfigError("accuracy: empty input or length mismatch");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    if (predictions[i] == truths[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

inline double rmse(const std::vector<double>& predictions, const std::vector<double>& truths) {
  if (predictions.size() != truths.size() || predictions.empty())
    throw ConfigError("rmse: empty input or length mismatch");
  double sse = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - truths[i];
    sse += d * d;
  }
  return std::sqrt(sse / static_cast<double>(predictions.size()));
}

// Pair-counting AUC with half credit for ties, computed via average ranks.
inline double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size() || scores.empty())
    throw ConfigError("auc: empty input or length mismatch");
  std::size_t n_pos = 0;
  for (const int y : labels)
    if (y == 1) ++n_pos;
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw NumericError("auc: both classes must be present");
  const auto ranks = average_ranks(scores);
  double rank_sum_pos = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == 1) rank_sum_pos += ranks[i];
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

}  // namespace judgelens::numerics
