#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/core/records.hpp"
#include "judgelens/rng.hpp"

namespace judgelens::core {

// Target marginals over (y_cont, log density): fixed-width bins on
// y_cont in [-1, 1]; equal-count bins on log density derived from a
// reference collection.
struct MarginalSpec {
  std::vector<double> ycont_edges;       // kBins + 1 edges
  std::vector<double> log_density_edges; // kBins + 1 edges
  std::vector<double> ycont_mass;        // normalized, kBins
  std::vector<double> log_density_mass;  // normalized, kBins

  static constexpr std::size_t kBins = 10;
};

namespace rebalance_detail {

inline std::size_t bin_of(double value, const std::vector<double>& edges) {
  const std::size_t bins = edges.size() - 1;
  if (value <= edges.front()) return 0;
  if (value >= edges.back()) return bins - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  return static_cast<std::size_t>(it - edges.begin()) - 1;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

}  // namespace rebalance_detail

inline MarginalSpec marginals_from(const std::vector<AggregatedImageRecord>& records) {
  if (records.empty()) throw DataError("marginals_from: empty collection");
  MarginalSpec spec;
  const std::size_t bins = MarginalSpec::kBins;
  spec.ycont_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    spec.ycont_edges[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(bins);

  std::vector<double> logd;
  logd.reserve(records.size());
  for (const auto& r : records) logd.push_back(std::log(r.density));
  std::sort(logd.begin(), logd.end());
  spec.log_density_edges.resize(bins + 1);
  spec.log_density_edges.front() = logd.front();
  spec.log_density_edges.back() = logd.back();
  for (std::size_t i = 1; i < bins; ++i) {
    const double pos = static_cast<double>(i) * static_cast<double>(logd.size() - 1) /
                       static_cast<double>(bins);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    spec.log_density_edges[i] =
        logd[lo] * (1.0 - frac) + logd[std::min(lo + 1, logd.size() - 1)] * frac;
  }

  spec.ycont_mass.assign(bins, 0.0);
  spec.log_density_mass.assign(bins, 0.0);
  for (const auto& r : records) {
    spec.ycont_mass[rebalance_detail::bin_of(r.y_cont, spec.ycont_edges)] += 1.0;
    spec.log_density_mass[rebalance_detail::bin_of(std::log(r.density),
                                                   spec.log_density_edges)] += 1.0;
  }
  const double n = static_cast<double>(records.size());
  for (auto& m : spec.ycont_mass) m /= n;
  for (auto& m : spec.log_density_mass) m /= n;
  return spec;
}

struct RebalanceResult {
  std::vector<AggregatedImageRecord> sample;
  double tv_ycont = 0.0;
  double tv_log_density = 0.0;
};

// Resamples (with replacement) so the sample's marginals on y_cont and log
// density match the target. Cell weights come from iterative proportional
// fitting of the source joint histogram to the two target marginals.
inline RebalanceResult rebalance_sample(const std::vector<AggregatedImageRecord>& source,
                                        const MarginalSpec& target, std::size_t n,
                                        std::uint64_t seed) {
  if (source.empty()) throw DataError("rebalance_sample: empty source");
  if (n == 0) throw ConfigError("rebalance_sample: sample size must be positive");
  const std::size_t bins = MarginalSpec::kBins;

  // Source records per joint cell.
  std::vector<std::vector<std::size_t>> cell_members(bins * bins);
  for (std::size_t i = 0; i < source.size(); ++i) {
    const std::size_t bi = rebalance_detail::bin_of(source[i].y_cont, target.ycont_edges);
    const std::size_t bj =
        rebalance_detail::bin_of(std::log(source[i].density), target.log_density_edges);
    cell_members[bi * bins + bj].push_back(i);
  }

  std::vector<double> row_support(bins, 0.0), col_support(bins, 0.0);
  for (std::size_t i = 0; i < bins; ++i)
    for (std::size_t j = 0; j < bins; ++j) {
      const double c = static_cast<double>(cell_members[i * bins + j].size());
      row_support[i] += c;
      col_support[j] += c;
    }
  for (std::size_t i = 0; i < bins; ++i) {
    if (target.ycont_mass[i] > 0.0 && row_support[i] == 0.0)
      throw DataError("rebalance_sample: no source records in y_cont bin [" +
                      num_str(target.ycont_edges[i]) + ", " + num_str(target.ycont_edges[i + 1]) +
                      ") with positive target mass");
    if (target.log_density_mass[i] > 0.0 && col_support[i] == 0.0)
      throw DataError("rebalance_sample: no source records in log density bin [" +
                      num_str(target.log_density_edges[i]) + ", " +
                      num_str(target.log_density_edges[i + 1]) + ") with positive target mass");
  }

  // IPF on the joint cell weights.
  std::vector<double> weight(bins * bins, 0.0);
  for (std::size_t c = 0; c < bins * bins; ++c)
    weight[c] = static_cast<double>(cell_members[c].size());
  for (int round = 0; round < 200; ++round) {
    for (std::size_t i = 0; i < bins; ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < bins; ++j) row_sum += weight[i * bins + j];
      const double factor = row_sum > 0.0 ? target.ycont_mass[i] / row_sum : 0.0;
      for (std::size_t j = 0; j < bins; ++j) weight[i * bins + j] *= factor;
    }
    for (std::size_t j = 0; j < bins; ++j) {
      double col_sum = 0.0;
      for (std::size_t i = 0; i < bins; ++i) col_sum += weight[i * bins + j];
      const double factor = col_sum > 0.0 ? target.log_density_mass[j] / col_sum : 0.0;
      for (std::size_t i = 0; i < bins; ++i) weight[i * bins + j] *= factor;
    }
  }
  double total = 0.0;
  for (const double w : weight) total += w;
  if (total <= 0.0) throw NumericError("rebalance_sample: degenerate joint weights");
  std::vector<double> cumulative(bins * bins);
  double acc = 0.0;
  for (std::size_t c = 0; c < bins * bins; ++c) {
    acc += weight[c] / total;
    cumulative[c] = acc;
  }
  cumulative.back() = 1.0;

  RebalanceResult result;
  result.sample.reserve(n);
  Rng rng = Rng::keyed(seed, {hash_str("rebalance")});
  std::vector<double> got_row(bins, 0.0), got_col(bins, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.uniform();
    std::size_t cell = static_cast<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    while (cell_members[cell].empty()) ++cell;  // skip zero-weight boundary hits
    const auto& members = cell_members[cell];
    const auto& rec = source[members[rng.uniform_int(members.size())]];
    result.sample.push_back(rec);
    got_row[cell / bins] += 1.0;
    got_col[cell % bins] += 1.0;
  }
  for (auto& v : got_row) v /= static_cast<double>(n);
  for (auto& v : got_col) v /= static_cast<double>(n);
  result.tv_ycont = rebalance_detail::total_variation(got_row, target.ycont_mass);
  result.tv_log_density = rebalance_detail::total_variation(got_col, target.log_density_mass);
  return result;
}

}  // namespace judgelens::core
