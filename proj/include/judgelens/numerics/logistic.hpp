#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "judgelens/common.hpp"
#include "judgelens/numerics/linalg.hpp"
#include "judgelens/numerics/special.hpp"

namespace judgelens::numerics {

struct LogisticFit {
  double intercept = 0.0;
  std::vector<double> beta;
  // Inverse penalized Hessian, (K+1)^2 row-major with the intercept first.
  std::vector<double> covariance;
  bool converged = false;
  bool separation_warning = false;
  int iterations = 0;
  double final_grad_norm = 0.0;
  double ridge = 0.0;

  double standard_error(std::size_t param) const {
    const std::size_t n = beta.size() + 1;
    return std::sqrt(covariance[param * n + param]);
  }

  // param 0 is the intercept, params 1..K the feature coefficients.
  std::pair<double, double> wald_ci(std::size_t param) const {
    const double est = param == 0 ? intercept : beta[param - 1];
    const double se = standard_error(param);
    return {est - kZ95 * se, est + kZ95 * se};
  }
};

namespace logistic_detail {

inline double linear_term(const LogisticFit& fit, const std::vector<double>& row) {
  double z = fit.intercept;
  for (std::size_t k = 0; k < fit.beta.size(); ++k) z += fit.beta[k] * row[k];
  return z;
}

inline double penalized_nll(const std::vector<std::vector<double>>& x,
                            const std::vector<int>& y, const LogisticFit& fit,
                            double ridge) {
  double nll = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = linear_term(fit, x[i]);
    // log(1 + e^z) - y z, computed stably.
    const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    nll += softplus - (y[i] == 1 ? z : 0.0);
  }
  for (const double b : fit.beta) nll += 0.5 * ridge * b * b;
  return nll;
}

}  // namespace logistic_detail

// Newton/IRLS maximization of the ridge-penalized binomial log-likelihood.
// The penalty applies to the feature coefficients only, not the intercept.
// Quasi-complete separation is detected by the parameter infinity norm
// exceeding 1e3; coefficients are clipped at that cap and flagged.
inline LogisticFit fit_logistic_irls(const std::vector<std::vector<double>>& features,
                                     const std::vector<int>& labels, double ridge = 1e-8) {
  const std::size_t n = features.size();
  if (n == 0 || n != labels.size())
    throw ConfigError("fit_logistic_irls: empty data or length mismatch");
  const std::size_t k = features[0].size();
  if (n <= k) throw ConfigError("fit_logistic_irls: need more rows than features");
  if (ridge < 0.0) throw ConfigError("fit_logistic_irls: ridge must be nonnegative");

  constexpr double grad_tol = 1e-8;
  constexpr int max_iter = 100;
  constexpr double param_cap = 1e3;
  const std::size_t dim = k + 1;

  LogisticFit fit;
  fit.beta.assign(k, 0.0);
  fit.ridge = ridge;

  std::vector<double> grad(dim), hess(dim * dim);
  auto compute_grad = [&](const LogisticFit& f) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(logistic_detail::linear_term(f, features[i]));
      const double resid = labels[i] - p;
      grad[0] += resid;
      for (std::size_t j = 0; j < k; ++j) grad[j + 1] += resid * features[i][j];
    }
    for (std::size_t j = 0; j < k; ++j) grad[j + 1] -= ridge * f.beta[j];
  };
  auto compute_hessian = [&](const LogisticFit& f) {
    std::fill(hess.begin(), hess.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(logistic_detail::linear_term(f, features[i]));
      const double w = std::max(p * (1.0 - p), 1e-12);
      for (std::size_t a = 0; a < dim; ++a) {
        const double xa = a == 0 ? 1.0 : features[i][a - 1];
        for (std::size_t b = a; b < dim; ++b) {
          const double xb = b == 0 ? 1.0 : features[i][b - 1];
          hess[a * dim + b] += w * xa * xb;
        }
      }
    }
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < a; ++b) hess[a * dim + b] = hess[b * dim + a];
    for (std::size_t j = 1; j < dim; ++j) hess[j * dim + j] += ridge;
  };
  auto inf_norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
  };

  double nll = logistic_detail::penalized_nll(features, labels, fit, ridge);
  for (int iter = 0; iter < max_iter; ++iter) {
    fit.iterations = iter + 1;
    compute_grad(fit);
    fit.final_grad_norm = inf_norm(grad);
    if (fit.final_grad_norm < grad_tol) {
      fit.converged = true;
      break;
    }
    compute_hessian(fit);
    const auto step = cholesky_solve(hess, dim, grad);

    // Newton with step halving so the penalized NLL never increases.
    double scale = 1.0;
    LogisticFit trial = fit;
    for (int halving = 0; halving < 30; ++halving) {
      trial.intercept = fit.intercept + scale * step[0];
      for (std::size_t j = 0; j < k; ++j) trial.beta[j] = fit.beta[j] + scale * step[j + 1];
      const double trial_nll = logistic_detail::penalized_nll(features, labels, trial, ridge);
      if (trial_nll <= nll || halving == 29) {
        nll = trial_nll;
        break;
      }
      scale *= 0.5;
    }
    fit.intercept = trial.intercept;
    fit.beta = trial.beta;

    double pnorm = std::abs(fit.intercept);
    for (const double b : fit.beta) pnorm = std::max(pnorm, std::abs(b));
    if (pnorm > param_cap) {
      fit.separation_warning = true;
      fit.converged = false;
      auto clip = [&](double v) { return std::clamp(v, -param_cap, param_cap); };
      fit.intercept = clip(fit.intercept);
      for (double& b : fit.beta) b = clip(b);
      compute_grad(fit);
      fit.final_grad_norm = inf_norm(grad);
      break;
    }
  }

  compute_hessian(fit);
  fit.covariance = cholesky_inverse(hess, dim);
  return fit;
}

inline std::vector<double> predict_logistic(const LogisticFit& fit,
                                            const std::vector<std::vector<double>>& features) {
  std::vector<double> out;
  out.reserve(features.size());
  for (const auto& row : features) {
    if (row.size() != fit.beta.size())
      throw ConfigError("predict_logistic: feature dimension mismatch");
    out.push_back(sigmoid(logistic_detail::linear_term(fit, row)));
  }
  return out;
}

inline double predict_logistic_one(const LogisticFit& fit, const std::vector<double>& row) {
  if (row.size() != fit.beta.size())
    throw ConfigError("predict_logistic: feature dimension mismatch");
  return sigmoid(logistic_detail::linear_term(fit, row));
}

}  // namespace judgelens::numerics
