#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/rng.hpp"

namespace judgelens::numerics {

struct BootstrapInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t draws_used = 0;
  std::size_t failures = 0;

  bool excludes_zero() const { return (lo > 0.0 && hi > 0.0) || (lo < 0.0 && hi < 0.0); }
  bool covers_zero() const { return !excludes_zero(); }
};

// Linear-interpolation quantile of sorted values.
inline double sorted_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw NumericError("quantile of empty sample");
  if (sorted.size() == 1) return sorted[0];
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

// 95% percentile bootstrap. Each draw's RNG stream is keyed by (seed, draw
// index), so the interval is identical regardless of evaluation schedule.
// A draw whose statistic throws is skipped and counted; more than 10% of
// failed draws is an error.
inline BootstrapInterval bootstrap_ci(
    const std::function<double(const std::vector<std::size_t>&)>& statistic, std::size_t n,
    std::size_t draws = 1000, std::uint64_t seed = 0) {
  if (n < 10) throw ConfigError("bootstrap_ci: need at least 10 observations");
  if (draws < 2) throw ConfigError("bootstrap_ci: need at least 2 draws");

  std::vector<double> results(draws, std::numeric_limits<double>::quiet_NaN());
  std::vector<char> ok(draws, 0);
  parallel_for(draws, [&](std::size_t d) {
    Rng rng = Rng::keyed(seed, {hash_str("bootstrap"), d});
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::size_t>(rng.uniform_int(n));
    try {
      const double value = statistic(idx);
      if (std::isfinite(value)) {
        results[d] = value;
        ok[d] = 1;
      }
    } catch (const std::exception&) {
      // counted as a failed draw
    }
  });

  BootstrapInterval out;
  std::vector<double> kept;
  kept.reserve(draws);
  for (std::size_t d = 0; d < draws; ++d)
    if (ok[d]) kept.push_back(results[d]);
  out.draws_used = kept.size();
  out.failures = draws - kept.size();
  if (out.failures * 10 > draws)
    throw NumericError("bootstrap_ci: more than 10% of resample draws failed");
  std::sort(kept.begin(), kept.end());
  out.lo = sorted_quantile(kept, 0.025);
  out.hi = sorted_quantile(kept, 0.975);
  return out;
}

}  // namespace judgelens::numerics
