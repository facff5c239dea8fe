#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/numerics/linalg.hpp"

namespace judgelens::numerics {

struct PolynomialFit {
  int degree = 0;
  std::vector<double> coefficients;  // c0 .. c_degree
  double rmse = 0.0;
  double domain_lo = 0.0;
  double domain_hi = 0.0;

  // Evaluation clamps to the fitting domain so a cubic never blows up on
  // inputs outside the range it was fit on.
  double operator()(double x) const {
    const double t = std::clamp(x, domain_lo, domain_hi);
    double acc = 0.0;
    for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * t + coefficients[i];
    return acc;
  }
};

inline PolynomialFit fit_polynomial_ls(const std::vector<double>& x,
                                       const std::vector<double>& y, int degree = 3) {
  if (degree < 0) throw ConfigError("fit_polynomial_ls: negative degree");
  const std::size_t n = x.size();
  if (n != y.size()) throw ConfigError("fit_polynomial_ls: length mismatch");
  if (n <= static_cast<std::size_t>(degree))
    throw ConfigError("fit_polynomial_ls: need more points than the degree");

  const std::size_t cols = static_cast<std::size_t>(degree) + 1;
  std::vector<double> design(n * cols);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < cols; ++j) {
      design[i * cols + j] = p;
      p *= x[i];
    }
  }

  PolynomialFit fit;
  fit.degree = degree;
  try {
    fit.coefficients = qr_least_squares(design, n, cols, y);
  } catch (const NumericError&) {
    throw NumericError(
        "fit_polynomial_ls: rank-deficient design (x values too repetitive); try a lower degree");
  }
  fit.domain_lo = *std::min_element(x.begin(), x.end());
  fit.domain_hi = *std::max_element(x.begin(), x.end());

  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = y[i] - fit(x[i]);
    sse += resid * resid;
  }
  fit.rmse = std::sqrt(sse / static_cast<double>(n));
  return fit;
}

}  // namespace judgelens::numerics
