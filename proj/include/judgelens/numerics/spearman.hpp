#pragma once

#include <cmath>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/numerics/ranks.hpp"
#include "judgelens/numerics/special.hpp"

namespace judgelens::numerics {

struct RankCorrelation {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Spearman rank correlation: Pearson correlation of average ranks, with the
// two-sided p-value from the t approximation.
inline RankCorrelation spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n != b.size()) throw ConfigError("spearman: length mismatch");
  if (n < 3) throw ConfigError("spearman: need at least 3 observations");

  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += ra[i];
    mean_b += rb[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = ra[i] - mean_a;
    const double db = rb[i] - mean_b;
    sxx += da * da;
    syy += db * db;
    sxy += da * db;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw NumericError("spearman: zero rank variance, correlation undefined");

  RankCorrelation out;
  out.n = n;
  out.r = sxy / std::sqrt(sxx * syy);
  out.r = std::clamp(out.r, -1.0, 1.0);
  const double nu = static_cast<double>(n - 2);
  if (std::abs(out.r) >= 1.0) {
    out.p_value = 0.0;
  } else {
    const double t = out.r * std::sqrt(nu / (1.0 - out.r * out.r));
    out.p_value = student_t_two_sided_p(t, nu);
  }
  return out;
}

}  // namespace judgelens::numerics
