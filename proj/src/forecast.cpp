#include "forecast.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "fracdiff.hpp"

namespace arfima {

std::string to_string(ForecastMethod m) {
  switch (m) {
    case ForecastMethod::kCssRecursive: return "css_recursive";
    case ForecastMethod::kCssClosedForm: return "css_closed_form";
    case ForecastMethod::kLs: return "ls";
  }
  return "unknown";
}

std::vector<double> wold_coeffs(const ArfimaParams& params, std::size_t length) {
  const auto arma = rational_expansion(params.ma_poly(), params.ar_poly(), length);
  return convolve(arma, frac_coeffs(-params.d, length), length);
}

double sigma2_h(const ArfimaParams& params, std::size_t h, double sigma2) {
  const auto c = wold_coeffs(params, h);
  double s = 0.0;
  for (double ci : c) s += ci * ci;
  return sigma2 * s;
}

ForecastResult predict_css_recursive(std::span<const double> y,
                                     const ArfimaParams& params, std::size_t h,
                                     double sigma2) {
  if (y.empty()) throw std::invalid_argument("predict_css_recursive: empty series");
  if (h == 0) throw std::invalid_argument("predict_css_recursive: h must be >= 1");
  if (!is_feasible(params))
    throw std::domain_error("predict_css_recursive: " + feasibility_violation(params));

  const std::size_t n = y.size();
  const std::size_t nn = n + h;
  const auto pi = frac_coeffs(params.d, nn);
  const auto& alpha = params.alpha;
  const auto& beta = params.beta;

  std::vector<double> z(y.begin(), y.end());
  z.resize(nn, 0.0);
  std::vector<double> v(nn, 0.0);
  std::vector<double> eps(nn, 0.0);
  // in-sample pass
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= t; ++k) acc += pi[k] * z[t - k];
    v[t] = acc;
    double e = v[t];
    for (std::size_t j = 1; j <= alpha.size() && j <= t; ++j)
      e -= alpha[j - 1] * v[t - j];
    for (std::size_t j = 1; j <= beta.size() && j <= t; ++j)
      e += beta[j - 1] * eps[t - j];
    eps[t] = e;
  }
  // future values chosen so the implied residual is zero
  for (std::size_t t = n; t < nn; ++t) {
    double vt = 0.0;
    for (std::size_t j = 1; j <= alpha.size() && j <= t; ++j)
      vt += alpha[j - 1] * v[t - j];
    for (std::size_t j = 1; j <= beta.size() && j <= t; ++j)
      vt -= beta[j - 1] * eps[t - j];
    double tail = 0.0;
    for (std::size_t k = 1; k <= t; ++k) tail += pi[k] * z[t - k];
    z[t] = vt - tail;
    v[t] = vt;
    eps[t] = 0.0;
  }

  ForecastResult r;
  r.horizon = h;
  r.method = ForecastMethod::kCssRecursive;
  r.point.assign(z.begin() + static_cast<std::ptrdiff_t>(n), z.end());
  r.sigma2_h = arfima::sigma2_h(params, h, sigma2);
  return r;
}

namespace {

// u_n(eta) = (-v_n,...,-v_{n-p1+1}, eps_n,...,eps_{n-p2+1})
Eigen::VectorXd state_vector(std::span<const double> v, std::span<const double> eps,
                             std::size_t p1, std::size_t p2) {
  const std::size_t n = v.size();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p1 + p2));
  for (std::size_t i = 0; i < p1; ++i)
    if (n > i) u(static_cast<Eigen::Index>(i)) = -v[n - 1 - i];
  for (std::size_t i = 0; i < p2; ++i)
    if (n > i) u(static_cast<Eigen::Index>(p1 + i)) = eps[n - 1 - i];
  return u;
}

}  // namespace

ForecastResult predict_css_closed_form(std::span<const double> y,
                                       const ArfimaParams& params, std::size_t h,
                                       double sigma2) {
  if (y.empty()) throw std::invalid_argument("predict_css_closed_form: empty series");
  if (h == 0) throw std::invalid_argument("predict_css_closed_form: h must be >= 1");
  if (!is_feasible(params))
    throw std::domain_error("predict_css_closed_form: " +
                            feasibility_violation(params));

  const std::size_t n = y.size();
  const std::size_t p1 = params.p1();
  const std::size_t p2 = params.p2();
  const std::size_t p = p1 + p2;

  const auto pi = frac_coeffs(params.d, n);
  const auto cbar = frac_coeffs(-params.d, n + h);

  // predicted state terms v_hat_{n+1..n+h}; empty theta means they vanish
  std::vector<double> vhat(h, 0.0);
  if (p > 0) {
    const std::vector<double> v = apply_frac_diff(y, params.d);
    const std::vector<double> eps = residuals(y, params);
    const Eigen::MatrixXd a_t = companion_a(params.alpha, params.beta).transpose();
    Eigen::VectorXd theta(static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < p1; ++i)
      theta(static_cast<Eigen::Index>(i)) = params.alpha[i];
    for (std::size_t i = 0; i < p2; ++i)
      theta(static_cast<Eigen::Index>(p1 + i)) = params.beta[i];
    Eigen::VectorXd state = state_vector(v, eps, p1, p2);
    for (std::size_t l = 1; l <= h; ++l) {
      vhat[l - 1] = -state.dot(theta);  // -u_n^T A^{l-1} theta
      state = a_t * state;
    }
  }

  ForecastResult r;
  r.horizon = h;
  r.method = ForecastMethod::kCssClosedForm;
  r.point.assign(h, 0.0);
  for (std::size_t l = 1; l <= h; ++l) {
    // coefficients of G_d(B) = (1-B)^d sum_{k>=l} cbar_k B^{k-l}, exact at lag n
    double gy = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      double gm = 0.0;
      for (std::size_t a = 0; a <= m; ++a) gm += pi[a] * cbar[m - a + l];
      gy += gm * y[n - 1 - m];
    }
    double corr = 0.0;
    for (std::size_t s = 0; s < l; ++s) corr += cbar[s] * vhat[l - 1 - s];
    r.point[l - 1] = gy + corr;
  }
  r.sigma2_h = arfima::sigma2_h(params, h, sigma2);
  return r;
}

std::vector<double> ls_ar_coefficients(std::span<const double> y, std::size_t p1) {
  const std::size_t n = y.size();
  if (p1 == 0) throw std::invalid_argument("ls_ar_coefficients: p1 must be >= 1");
  if (n <= 2 * p1) throw std::invalid_argument("ls_ar_coefficients: requires n > 2*p1");

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p1),
                                               static_cast<Eigen::Index>(p1));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p1));
  for (std::size_t t = p1 - 1; t + 1 < n; ++t) {
    for (std::size_t i = 0; i < p1; ++i) {
      rhs(static_cast<Eigen::Index>(i)) += y[t - i] * y[t + 1];
      for (std::size_t j = 0; j < p1; ++j)
        gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            y[t - i] * y[t - j];
    }
  }
  if (gram.trace() <= 0.0)
    throw std::domain_error("ls_ar_coefficients: degenerate data (zero Gram matrix)");
  // symmetric PSD solve; pseudo-inverse fallback for singular Gram matrices
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  Eigen::VectorXd a;
  bool ok = ldlt.info() == Eigen::Success;
  if (ok) {
    a = ldlt.solve(rhs);
    ok = (gram * a - rhs).norm() <= 1e-6 * (1.0 + rhs.norm());
  }
  if (!ok) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(0) <= 0.0)
      throw std::domain_error("ls_ar_coefficients: degenerate data (zero Gram matrix)");
    svd.setThreshold(1e-12);
    a = svd.solve(rhs);
  }
  return std::vector<double>(a.data(), a.data() + p1);
}

ForecastResult predict_ls_integrated_ar(std::span<const double> y, std::size_t p1,
                                        std::size_t h) {
  if (h == 0) throw std::invalid_argument("predict_ls_integrated_ar: h must be >= 1");
  const auto a = ls_ar_coefficients(y, p1);
  const std::size_t n = y.size();
  std::vector<double> z(y.begin(), y.end());
  z.resize(n + h, 0.0);
  for (std::size_t t = n; t < n + h; ++t) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= p1 && j <= t; ++j) acc += a[j - 1] * z[t - j];
    z[t] = acc;
  }
  ForecastResult r;
  r.horizon = h;
  r.method = ForecastMethod::kLs;
  r.point.assign(z.begin() + static_cast<std::ptrdiff_t>(n), z.end());
  r.sigma2_h = 0.0;  // no model-implied decomposition for the LS baseline
  return r;
}

}  // namespace arfima
