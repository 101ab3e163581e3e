#include "model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracdiff.hpp"

namespace arfima {

Eigen::VectorXd ArfimaParams::as_vector() const {
  Eigen::VectorXd eta(static_cast<Eigen::Index>(p_bar()));
  Eigen::Index k = 0;
  for (double a : alpha) eta(k++) = a;
  for (double b : beta) eta(k++) = b;
  eta(k) = d;
  return eta;
}

ArfimaParams ArfimaParams::from_vector(const Eigen::VectorXd& eta, std::size_t p1,
                                       std::size_t p2) {
  if (eta.size() != static_cast<Eigen::Index>(p1 + p2 + 1))
    throw std::invalid_argument("ArfimaParams::from_vector: dimension mismatch");
  ArfimaParams p;
  p.alpha.assign(eta.data(), eta.data() + p1);
  p.beta.assign(eta.data() + p1, eta.data() + p1 + p2);
  p.d = eta(static_cast<Eigen::Index>(p1 + p2));
  return p;
}

ParamSpace ParamSpace::make(std::size_t p1, std::size_t p2, double d_lo, double d_hi,
                            double theta_bound) {
  ParamSpace s;
  s.p1 = p1;
  s.p2 = p2;
  s.d_lo = d_lo;
  s.d_hi = d_hi;
  s.theta_lo.assign(p1 + p2, -theta_bound);
  s.theta_hi.assign(p1 + p2, theta_bound);
  return s;
}

void ParamSpace::validate() const {
  if (!(d_lo < d_hi)) throw std::invalid_argument("ParamSpace: requires d_lo < d_hi");
  if (!(stability_margin >= 0.0))
    throw std::invalid_argument("ParamSpace: stability margin must be >= 0");
  if (theta_lo.size() != p1 + p2 || theta_hi.size() != p1 + p2)
    throw std::invalid_argument("ParamSpace: theta box has wrong dimension");
  for (std::size_t i = 0; i < theta_lo.size(); ++i)
    if (!(theta_lo[i] < theta_hi[i]))
      throw std::invalid_argument("ParamSpace: empty theta box");
}

std::string feasibility_violation(const ArfimaParams& params) {
  if (!std::isfinite(params.d)) return "memory parameter d is not finite";
  if (!poly_is_stable(params.ar_poly()))
    return "AR polynomial has a root on or inside the unit circle";
  if (!poly_is_stable(params.ma_poly()))
    return "MA polynomial has a root on or inside the unit circle";
  if (have_common_root(params.ar_poly(), params.ma_poly()))
    return "AR and MA polynomials share a root";
  if (params.p1() + params.p2() > 0) {
    const double a = params.p1() > 0 ? std::abs(params.alpha.back()) : 0.0;
    const double b = params.p2() > 0 ? std::abs(params.beta.back()) : 0.0;
    if (a + b == 0.0) return "highest-order AR and MA coefficients are both zero";
  }
  return "";
}

bool is_feasible(const ArfimaParams& params) {
  return feasibility_violation(params).empty();
}

bool is_feasible(const ArfimaParams& params, const ParamSpace& space) {
  if (params.p1() != space.p1 || params.p2() != space.p2) return false;
  if (params.d < space.d_lo || params.d > space.d_hi) return false;
  for (std::size_t i = 0; i < space.p1; ++i)
    if (params.alpha[i] < space.theta_lo[i] || params.alpha[i] > space.theta_hi[i])
      return false;
  for (std::size_t i = 0; i < space.p2; ++i)
    if (params.beta[i] < space.theta_lo[space.p1 + i] ||
        params.beta[i] > space.theta_hi[space.p1 + i])
      return false;
  if (space.stability_margin > 0.0 &&
      (!poly_is_stable(params.ar_poly(), space.stability_margin) ||
       !poly_is_stable(params.ma_poly(), space.stability_margin)))
    return false;
  return is_feasible(params);
}

SimulationResult simulate(const ArfimaParams& params, double sigma, std::size_t n,
                          std::uint64_t rng_seed, Innovation innovation) {
  if (n == 0) throw std::invalid_argument("simulate: n must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("simulate: sigma must be positive");
  if (!is_feasible(params))
    throw std::domain_error("simulate: " + feasibility_violation(params));

  std::mt19937_64 rng(rng_seed);
  std::vector<double> eps(n);
  if (innovation == Innovation::kGaussian) {
    std::normal_distribution<double> dist(0.0, sigma);
    for (auto& e : eps) e = dist(rng);
  } else {
    const double half = sigma * std::sqrt(3.0);
    std::uniform_real_distribution<double> dist(-half, half);
    for (auto& e : eps) e = dist(rng);
  }

  // MA filter, AR recursion, then integrate by (1-B)^{-d}.
  const auto& beta = params.beta;
  const auto& alpha = params.alpha;
  // feedback recursions carry extended-precision state so rounding does not
  // compound over long samples
  std::vector<long double> w(n);
  for (std::size_t t = 0; t < n; ++t) {
    long double acc = eps[t];
    for (std::size_t j = 1; j <= beta.size() && j <= t; ++j)
      acc -= static_cast<long double>(beta[j - 1]) * eps[t - j];
    w[t] = acc;
  }
  std::vector<long double> ux(n);
  for (std::size_t t = 0; t < n; ++t) {
    long double acc = w[t];
    for (std::size_t j = 1; j <= alpha.size() && j <= t; ++j)
      acc += static_cast<long double>(alpha[j - 1]) * ux[t - j];
    ux[t] = acc;
  }
  std::vector<double> u(ux.begin(), ux.end());
  SimulationResult out;
  out.y.values = apply_frac_diff(u, -params.d);
  out.innovations = std::move(eps);
  return out;
}

namespace {

// eps_t = x_t + sum_j beta_j eps_{t-j} with x = A_1(B) v.
std::vector<double> residuals_from_v(std::span<const double> v,
                                     const ArfimaParams& params) {
  const std::size_t n = v.size();
  const auto& alpha = params.alpha;
  const auto& beta = params.beta;
  std::vector<long double> ex(n);
  for (std::size_t t = 0; t < n; ++t) {
    long double acc = v[t];
    for (std::size_t j = 1; j <= alpha.size() && j <= t; ++j)
      acc -= static_cast<long double>(alpha[j - 1]) * v[t - j];
    for (std::size_t j = 1; j <= beta.size() && j <= t; ++j)
      acc += static_cast<long double>(beta[j - 1]) * ex[t - j];
    ex[t] = acc;
  }
  return std::vector<double>(ex.begin(), ex.end());
}

// g_t = f_t + sum_j beta_j g_{t-j} (the shared MA-inversion recursion).
std::vector<double> ma_inverse(std::span<const double> f,
                               std::span<const double> beta) {
  const std::size_t n = f.size();
  std::vector<double> g(n);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = f[t];
    for (std::size_t j = 1; j <= beta.size() && j <= t; ++j)
      acc += beta[j - 1] * g[t - j];
    g[t] = acc;
  }
  return g;
}

std::vector<double> shifted(std::span<const double> x, std::size_t lag) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t t = lag; t < x.size(); ++t) out[t] = x[t - lag];
  return out;
}

void check_feasible(const ArfimaParams& params, const char* who) {
  if (!is_feasible(params))
    throw std::domain_error(std::string(who) + ": " + feasibility_violation(params));
}

}  // namespace

std::vector<double> residuals(std::span<const double> y, const ArfimaParams& params) {
  if (y.empty()) throw std::invalid_argument("residuals: empty series");
  check_feasible(params, "residuals");
  return residuals_from_v(apply_frac_diff(y, params.d), params);
}

double css_objective(std::span<const double> y, const ArfimaParams& params) {
  double s = 0.0;
  for (double e : residuals(y, params)) s += e * e;
  return s;
}

DerivSeries residual_derivatives(std::span<const double> y, const ArfimaParams& params,
                                 bool with_hessian) {
  if (y.empty()) throw std::invalid_argument("residual_derivatives: empty series");
  check_feasible(params, "residual_derivatives");
  const std::size_t n = y.size();
  const std::size_t p1 = params.p1();
  const std::size_t p2 = params.p2();
  const std::size_t pb = params.p_bar();

  const std::vector<double> v = apply_frac_diff(y, params.d);
  const std::vector<double> eps = residuals_from_v(v, params);

  // First derivatives.
  std::vector<std::vector<double>> g(pb);
  for (std::size_t k = 1; k <= p1; ++k) {
    std::vector<double> f = shifted(v, k);
    for (auto& x : f) x = -x;
    g[k - 1] = ma_inverse(f, params.beta);
  }
  for (std::size_t m = 1; m <= p2; ++m)
    g[p1 + m - 1] = ma_inverse(shifted(eps, m), params.beta);
  g[pb - 1] = log_diff_filter(eps);

  DerivSeries out;
  out.grad.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(pb));
  for (std::size_t i = 0; i < pb; ++i)
    for (std::size_t t = 0; t < n; ++t)
      out.grad(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) = g[i][t];

  if (!with_hessian) return out;

  // Second derivatives.  alpha-alpha blocks vanish (eps is linear in alpha);
  // every mixed derivative with d is log(1-B) applied to the corresponding
  // first-derivative series.
  std::vector<std::vector<std::vector<double>>> h(
      pb, std::vector<std::vector<double>>(pb));
  for (std::size_t k = 1; k <= p1; ++k)
    for (std::size_t m = 1; m <= p2; ++m) {
      auto hkm = ma_inverse(shifted(g[k - 1], m), params.beta);
      h[k - 1][p1 + m - 1] = hkm;
      h[p1 + m - 1][k - 1] = std::move(hkm);
    }
  for (std::size_t m = 1; m <= p2; ++m)
    for (std::size_t l = m; l <= p2; ++l) {
      std::vector<double> f(n, 0.0);
      const auto& gm = g[p1 + m - 1];
      const auto& gl = g[p1 + l - 1];
      for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        if (t >= m) acc += gl[t - m];
        if (t >= l) acc += gm[t - l];
        f[t] = acc;
      }
      auto hml = ma_inverse(f, params.beta);
      h[p1 + m - 1][p1 + l - 1] = hml;
      h[p1 + l - 1][p1 + m - 1] = std::move(hml);
    }
  for (std::size_t i = 0; i < pb; ++i) {
    auto hid = log_diff_filter(g[i]);
    if (i != pb - 1) h[i][pb - 1] = hid;
    h[pb - 1][i] = std::move(hid);
  }
  h[pb - 1][pb - 1] = log_diff_filter(g[pb - 1]);

  out.hess.assign(n, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pb),
                                           static_cast<Eigen::Index>(pb)));
  for (std::size_t i = 0; i < pb; ++i)
    for (std::size_t j = 0; j < pb; ++j) {
      if (h[i][j].empty()) continue;  // alpha-alpha block
      for (std::size_t t = 0; t < n; ++t)
        out.hess[t](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            h[i][j][t];
    }
  return out;
}

double css_objective_gradient(std::span<const double> y, const ArfimaParams& params,
                              Eigen::VectorXd& grad_out) {
  const std::size_t n = y.size();
  const std::size_t p1 = params.p1();
  const std::size_t p2 = params.p2();
  const std::size_t pb = params.p_bar();

  check_feasible(params, "css_objective_gradient");
  const std::vector<double> v = apply_frac_diff(y, params.d);
  const std::vector<double> eps = residuals_from_v(v, params);

  grad_out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pb));
  double s = 0.0;
  for (double e : eps) s += e * e;

  for (std::size_t k = 1; k <= p1; ++k) {
    std::vector<double> f = shifted(v, k);
    for (auto& x : f) x = -x;
    const auto gk = ma_inverse(f, params.beta);
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) acc += eps[t] * gk[t];
    grad_out(static_cast<Eigen::Index>(k - 1)) = 2.0 * acc;
  }
  for (std::size_t m = 1; m <= p2; ++m) {
    const auto gm = ma_inverse(shifted(eps, m), params.beta);
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) acc += eps[t] * gm[t];
    grad_out(static_cast<Eigen::Index>(p1 + m - 1)) = 2.0 * acc;
  }
  const auto gd = log_diff_filter(eps);
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) acc += eps[t] * gd[t];
  grad_out(static_cast<Eigen::Index>(pb - 1)) = 2.0 * acc;
  return s;
}

BSeries b_series(const ArfimaParams& params, const ArfimaParams& truth,
                 std::size_t length) {
  if (length == 0) throw std::invalid_argument("b_series: length must be >= 1");
  check_feasible(params, "b_series");
  check_feasible(truth, "b_series");
  if (params.p1() != truth.p1() || params.p2() != truth.p2())
    throw std::invalid_argument("b_series: order mismatch between params and truth");

  const std::size_t p1 = params.p1();
  const std::size_t p2 = params.p2();
  const std::size_t pb = params.p_bar();
  const std::size_t L = length;

  const auto frac = frac_coeffs(params.d - truth.d, L);
  const auto truth_ratio = rational_expansion(truth.ma_poly(), truth.ar_poly(), L);
  const auto arma_ratio = rational_expansion(params.ar_poly(), params.ma_poly(), L);
  const auto ma_inv = rational_expansion(LagPoly{}, params.ma_poly(), L);

  const auto frac_truth = convolve(frac, truth_ratio, L);
  BSeries out;
  out.b = convolve(frac_truth, arma_ratio, L);
  out.b_grad = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(L),
                                     static_cast<Eigen::Index>(pb));

  const auto frac_truth_mainv = convolve(frac_truth, ma_inv, L);
  for (std::size_t k = 1; k <= p1; ++k) {
    // d b / d alpha_k = -z^k (1-z)^{d-d0} A_{2,0} A_{1,0}^{-1} A_2^{-1}
    for (std::size_t s = k; s < L; ++s)
      out.b_grad(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k - 1)) =
          -frac_truth_mainv[s - k];
  }
  const auto b_mainv = convolve(out.b, ma_inv, L);
  for (std::size_t m = 1; m <= p2; ++m) {
    // d b / d beta_m = z^m b(z) A_2^{-1}
    for (std::size_t s = m; s < L; ++s)
      out.b_grad(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(p1 + m - 1)) =
          b_mainv[s - m];
  }
  const auto b_log = convolve(log_filter_coeffs(L), out.b, L);
  for (std::size_t s = 0; s < L; ++s)
    out.b_grad(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(pb - 1)) =
        b_log[s];
  return out;
}

Eigen::MatrixXd score_coeffs(const ArfimaParams& truth, std::size_t length) {
  check_feasible(truth, "score_coeffs");
  const std::size_t p1 = truth.p1();
  const std::size_t p2 = truth.p2();
  const std::size_t pb = truth.p_bar();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(length),
                                            static_cast<Eigen::Index>(pb));
  if (p1 > 0) {
    const auto ar_inv = rational_expansion(LagPoly{}, truth.ar_poly(), length);
    for (std::size_t k = 1; k <= p1; ++k)
      for (std::size_t s = k; s < length; ++s)
        b(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k - 1)) =
            -ar_inv[s - k];
  }
  if (p2 > 0) {
    const auto ma_inv = rational_expansion(LagPoly{}, truth.ma_poly(), length);
    for (std::size_t m = 1; m <= p2; ++m)
      for (std::size_t s = m; s < length; ++s)
        b(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(p1 + m - 1)) =
            ma_inv[s - m];
  }
  for (std::size_t s = 1; s < length; ++s)
    b(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(pb - 1)) =
        -1.0 / static_cast<double>(s);
  return b;
}

}  // namespace arfima
