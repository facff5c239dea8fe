#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "judgelens/common.hpp"

namespace judgelens::numerics {

// Small dense helpers for the K-by-K systems that show up in the logistic and
// polynomial fits (K is at most a handful).

// Cholesky factorization of a symmetric positive definite matrix (row-major,
// n x n). Throws on non-SPD input.
inline std::vector<double> cholesky(const std::vector<double>& a, std::size_t n) {
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (sum <= 0.0 || !std::isfinite(sum))
          throw NumericError("cholesky: matrix not positive definite");
        l[i * n + i] = std::sqrt(sum);
      } else {
        l[i * n + j] = sum / l[j * n + j];
      }
    }
  }
  return l;
}

inline std::vector<double> cholesky_solve(const std::vector<double>& a, std::size_t n,
                                          const std::vector<double>& b) {
  const auto l = cholesky(a, n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= l[i * n + k] * y[k];
    y[i] = sum / l[i * n + i];
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double sum = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) sum -= l[k * n + ii] * x[k];
    x[ii] = sum / l[ii * n + ii];
  }
  return x;
}

inline std::vector<double> cholesky_inverse(const std::vector<double>& a, std::size_t n) {
  std::vector<double> inv(n * n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<double> e(n, 0.0);
    e[col] = 1.0;
    const auto x = cholesky_solve(a, n, e);
    for (std::size_t row = 0; row < n; ++row) inv[row * n + col] = x[row];
  }
  // Symmetrize to wash out round-off.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double m = 0.5 * (inv[i * n + j] + inv[j * n + i]);
      inv[i * n + j] = inv[j * n + i] = m;
    }
  return inv;
}

// Householder QR least squares: minimizes ||A x - b|| for A (rows x cols,
// row-major, rows >= cols). Throws NumericError on rank deficiency.
inline std::vector<double> qr_least_squares(std::vector<double> a, std::size_t rows,
                                            std::size_t cols, std::vector<double> b) {
  if (rows < cols) throw NumericError("qr_least_squares: fewer rows than columns");
  double max_diag = 0.0;
  for (std::size_t k = 0; k < cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += a[i * cols + k] * a[i * cols + k];
    norm = std::sqrt(norm);
    if (k == 0) max_diag = norm;
    max_diag = std::max(max_diag, norm);
    if (norm <= 1e-12 * (max_diag > 0 ? max_diag : 1.0))
      throw NumericError("qr_least_squares: rank-deficient design matrix");
    const double alpha = a[k * cols + k] >= 0 ? -norm : norm;
    std::vector<double> v(rows - k);
    v[0] = a[k * cols + k] - alpha;
    for (std::size_t i = k + 1; i < rows; ++i) v[i - k] = a[i * cols + k];
    double vnorm2 = 0.0;
    for (const double vi : v) vnorm2 += vi * vi;
    if (vnorm2 == 0.0) continue;
    // Apply H = I - 2 v v^T / (v^T v) to remaining columns and to b.
    for (std::size_t j = k; j < cols; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * a[i * cols + j];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < rows; ++i) a[i * cols + j] -= f * v[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * b[i];
    const double f = 2.0 * dot / vnorm2;
    for (std::size_t i = k; i < rows; ++i) b[i] -= f * v[i - k];
  }
  std::vector<double> x(cols);
  for (std::size_t kk = cols; kk-- > 0;) {
    double sum = b[kk];
    for (std::size_t j = kk + 1; j < cols; ++j) sum -= a[kk * cols + j] * x[j];
    const double d = a[kk * cols + kk];
    if (std::abs(d) < 1e-300) throw NumericError("qr_least_squares: singular R");
    x[kk] = sum / d;
  }
  return x;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace judgelens::numerics
