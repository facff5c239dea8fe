#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "judgelens/core/records.hpp"

namespace judgelens::core {

struct SplitStats {
  bool empty = true;
  std::size_t n_images = 0;
  std::size_t n_responses = 0;
  double individual_accuracy = 0.0;
  double aggregate_accuracy = 0.0;
  double responses_per_image_mean = 0.0;
  double responses_per_image_median = 0.0;
  double responses_per_image_std = 0.0;
  double responses_per_rater_mean = 0.0;
  double responses_per_rater_median = 0.0;
  double responses_per_rater_std = 0.0;
  double fraction_y1 = 0.0;
  double fraction_hbar_above_half = 0.0;
  double fraction_votes1 = 0.0;
};

namespace stats_detail {

struct Moments {
  double mean = 0.0, median = 0.0, std_dev = 0.0;
};

inline Moments moments(std::vector<double> values) {
  Moments m;
  if (values.empty()) return m;
  const std::size_t n = values.size();
  double sum = 0.0;
  for (const double v : values) sum += v;
  m.mean = sum / static_cast<double>(n);
  std::sort(values.begin(), values.end());
  m.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  if (n > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - m.mean) * (v - m.mean);
    m.std_dev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return m;
}

}  // namespace stats_detail

// Per-split descriptive table. Aggregate metrics cover the split's images that
// have judgments; images without any judgments count toward n_images only.
inline std::map<Split, SplitStats> descriptive_stats(
    const std::vector<GroundTruthRecord>& truths, const std::vector<JudgmentRecord>& judgments,
    const std::vector<AggregatedImageRecord>& aggregated, const DatasetSplit& split) {
  std::unordered_map<std::string, const GroundTruthRecord*> truth_by_id;
  for (const auto& t : truths) truth_by_id[t.image_id] = &t;

  std::map<Split, SplitStats> table;
  for (const Split s : kAllSplits) table[s] = SplitStats{};

  for (const auto& t : truths) {
    auto& row = table[split.of(t.image_id)];
    row.n_images += 1;
  }

  std::map<Split, std::size_t> correct_votes, votes1, y1_count, hbar_above, agg_correct,
      agg_images;
  std::map<Split, std::vector<double>> per_image_counts;
  std::map<Split, std::map<std::string, std::size_t>> per_rater_counts;

  for (const auto& j : judgments) {
    const Split s = split.of(j.image_id);
    auto& row = table[s];
    row.n_responses += 1;
    const auto* truth = truth_by_id.at(j.image_id);
    if (j.vote == truth->y) correct_votes[s] += 1;
    if (j.vote == 1) votes1[s] += 1;
    per_rater_counts[s][j.rater_id] += 1;
  }

  for (const auto& rec : aggregated) {
    const Split s = split.of(rec.image_id);
    per_image_counts[s].push_back(static_cast<double>(rec.n_raters));
    if (rec.y == 1) y1_count[s] += 1;
    if (rec.h_bar > 0.5) hbar_above[s] += 1;
    const int main_prediction = rec.h_bar > 0.5 ? 1 : 0;
    if (main_prediction == rec.y) agg_correct[s] += 1;
    agg_images[s] += 1;
  }

  for (auto& [s, row] : table) {
    row.empty = row.n_images == 0;
    if (row.empty) continue;
    if (row.n_responses > 0) {
      row.individual_accuracy =
          static_cast<double>(correct_votes[s]) / static_cast<double>(row.n_responses);
      row.fraction_votes1 =
          static_cast<double>(votes1[s]) / static_cast<double>(row.n_responses);
    }
    if (agg_images[s] > 0) {
      row.aggregate_accuracy =
          static_cast<double>(agg_correct[s]) / static_cast<double>(agg_images[s]);
      row.fraction_y1 = static_cast<double>(y1_count[s]) / static_cast<double>(agg_images[s]);
      row.fraction_hbar_above_half =
          static_cast<double>(hbar_above[s]) / static_cast<double>(agg_images[s]);
    }
    const auto img_moments = stats_detail::moments(per_image_counts[s]);
    row.responses_per_image_mean = img_moments.mean;
    row.responses_per_image_median = img_moments.median;
    row.responses_per_image_std = img_moments.std_dev;
    std::vector<double> rater_counts;
    rater_counts.reserve(per_rater_counts[s].size());
    for (const auto& [rater, count] : per_rater_counts[s])
      rater_counts.push_back(static_cast<double>(count));
    const auto rater_moments = stats_detail::moments(rater_counts);
    row.responses_per_rater_mean = rater_moments.mean;
    row.responses_per_rater_median = rater_moments.median;
    row.responses_per_rater_std = rater_moments.std_dev;
  }
  return table;
}

// Published reference row for the street-view quiz benchmark (holdout test
// split); reported alongside synthetic results for orientation.
struct QuizReferenceStats {
  double individual_accuracy = 0.627;
  double aggregate_accuracy = 0.707;
  double fraction_y1 = 0.449;
  double fraction_votes1 = 0.538;
  double responses_per_image_mean = 1615.0;
};

}  // namespace judgelens::core
