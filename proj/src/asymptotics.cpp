#include "asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "forecast.hpp"
#include "fracdiff.hpp"

namespace arfima {

namespace {

constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;

void check_theta_feasible(const ArfimaParams& theta0, const char* who) {
  ArfimaParams p = theta0;
  p.d = 0.0;
  if (!is_feasible(p))
    throw std::domain_error(std::string(who) + ": " + feasibility_violation(p));
}

Eigen::MatrixXd l_matrix(const ArfimaParams& params, std::span<const double> c,
                         std::size_t h) {
  const Eigen::MatrixXd at = companion_a_tilde(params.alpha, params.beta);
  const Eigen::Index p = at.rows();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(p, p);  // A~^0
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(p, p);
  // accumulate s = h-1 down to 0 so powers grow by one each step
  for (std::size_t k = 0; k < h; ++k) {
    l += c[h - 1 - k] * power;
    power = at * power;
  }
  return l;
}

}  // namespace

FisherGamma fisher_gamma(const ArfimaParams& theta0, double sigma2,
                         std::size_t truncation) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("fisher_gamma: sigma2 must be > 0");
  if (truncation < 1000)
    throw std::invalid_argument("fisher_gamma: truncation must be >= 1000");
  check_theta_feasible(theta0, "fisher_gamma");

  const std::size_t p = theta0.p1() + theta0.p2();
  const std::size_t pb = p + 1;
  const Eigen::MatrixXd b = score_coeffs(theta0, truncation + 1);

  FisherGamma out;
  out.truncation = truncation;
  out.gamma = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pb),
                                    static_cast<Eigen::Index>(pb));
  out.gamma11.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  out.gamma12.resize(static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t jj = i; jj < p; ++jj) {
      double acc = 0.0;
      for (std::size_t s = 1; s <= truncation; ++s)
        acc += b(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) *
               b(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(jj));
      const double v = sigma2 * acc;
      out.gamma11(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jj)) = v;
      out.gamma11(static_cast<Eigen::Index>(jj), static_cast<Eigen::Index>(i)) = v;
    }
    double acc = 0.0;
    for (std::size_t s = 1; s <= truncation; ++s)
      acc += b(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) *
             (-1.0 / static_cast<double>(s));
    out.gamma12(static_cast<Eigen::Index>(i)) = sigma2 * acc;
    // geometric decay of the theta scores: flag a visibly unconverged tail
    if (std::abs(b(static_cast<Eigen::Index>(truncation),
                   static_cast<Eigen::Index>(i))) > 1e-8)
      out.truncation_warning = true;
  }
  out.gamma22 = kZeta2 * sigma2;  // exact zeta(2) tail

  out.gamma.topLeftCorner(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) =
      out.gamma11;
  out.gamma.col(static_cast<Eigen::Index>(p)).head(static_cast<Eigen::Index>(p)) =
      out.gamma12;
  out.gamma.row(static_cast<Eigen::Index>(p)).head(static_cast<Eigen::Index>(p)) =
      out.gamma12.transpose();
  out.gamma(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = out.gamma22;

  if (p == 0) {
    out.inv22 = 1.0 / out.gamma22;
    return out;
  }
  const Eigen::MatrixXd g11_inv = out.gamma11.inverse();
  out.inv11 = (out.gamma11 -
               out.gamma12 * out.gamma12.transpose() / out.gamma22).inverse();
  out.inv22 = 1.0 / (out.gamma22 - out.gamma12.dot(g11_inv * out.gamma12));
  out.inv12 = -out.inv22 * (g11_inv * out.gamma12);
  return out;
}

Eigen::MatrixXd r_matrix(std::size_t h) {
  if (h == 0) throw std::invalid_argument("r_matrix: h must be >= 1");
  const double c = 1.0 / kZeta2;  // 6 / pi^2
  Eigen::MatrixXd r(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(h));
  for (std::size_t i = 1; i <= h; ++i) {
    double partial = 0.0;
    for (std::size_t l = 1; l <= h - i; ++l)
      partial += 1.0 / (static_cast<double>(l) * static_cast<double>(l));
    r(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(i - 1)) =
        c * (kZeta2 - partial);
    for (std::size_t jj = i + 1; jj <= h; ++jj) {
      double acc = 0.0;
      for (std::size_t l = 1; l <= jj - i; ++l)
        acc += 1.0 / static_cast<double>(h - jj + l);
      const double v = c * acc / static_cast<double>(jj - i);
      r(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(jj - 1)) = v;
      r(static_cast<Eigen::Index>(jj - 1), static_cast<Eigen::Index>(i - 1)) = v;
    }
  }
  return r;
}

Eigen::MatrixXd q_matrix(const ArfimaParams& theta0, double sigma2, std::size_t h,
                         std::size_t truncation) {
  if (h == 0) throw std::invalid_argument("q_matrix: h must be >= 1");
  check_theta_feasible(theta0, "q_matrix");
  const std::size_t p = theta0.p1() + theta0.p2();
  Eigen::MatrixXd q(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(h));
  if (p == 0) return q;
  const Eigen::MatrixXd b = score_coeffs(theta0, truncation + 1);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t jj = 1; jj <= h; ++jj) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= truncation; ++k)
        acc += b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) /
               static_cast<double>(k + h - jj);
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jj - 1)) =
          sigma2 * acc;
    }
  return q;
}

MspeDecomposition mspe_decomposition(const ArfimaParams& params0, double sigma2,
                                     std::size_t h, std::size_t truncation) {
  if (h == 0) throw std::invalid_argument("mspe_decomposition: h must be >= 1");
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("mspe_decomposition: sigma2 must be > 0");
  if (!is_feasible(params0))
    throw std::domain_error("mspe_decomposition: " + feasibility_violation(params0));

  const std::size_t p = params0.p1() + params0.p2();
  MspeDecomposition out;
  out.h = h;
  out.r = r_matrix(h);
  const auto c = wold_coeffs(params0, h);
  out.c = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(h));
  out.sigma2_h = 0.0;
  for (double ci : c) out.sigma2_h += ci * ci;
  out.sigma2_h *= sigma2;

  const FisherGamma fg = fisher_gamma(params0, sigma2, truncation);
  out.truncation_warning = fg.truncation_warning;
  if (p == 0) {
    // gamma22 * inv22 == 1 exactly, so g reduces to c^T R c
    out.g = out.c.dot(out.r * out.c);
    out.total_second_order = out.g * sigma2;
    return out;
  }

  out.l = l_matrix(params0, c, h);
  out.q = q_matrix(params0, sigma2, h, truncation);
  out.f = (fg.gamma11 * out.l * fg.inv11 * out.l.transpose()).trace();
  out.g = fg.gamma22 * fg.inv22 * out.c.dot(out.r * out.c);
  // sign fixed by the h = 1 collapse of the decomposition to p_bar
  out.j = -fg.inv12.dot(out.l.transpose() * (out.q * out.c));
  out.total_second_order = (out.f + out.g + 2.0 * out.j) * sigma2;
  return out;
}

double g_bar_pure_fractional(double d0, std::size_t h) {
  if (h == 0) throw std::invalid_argument("g_bar_pure_fractional: h must be >= 1");
  const auto cbar = frac_coeffs(-d0, h);
  const Eigen::Map<const Eigen::VectorXd> c(cbar.data(), static_cast<Eigen::Index>(h));
  return c.dot(r_matrix(h) * c);
}

double f_bar_arma(const ArfimaParams& theta0, std::size_t h, std::size_t truncation) {
  if (h == 0) throw std::invalid_argument("f_bar_arma: h must be >= 1");
  check_theta_feasible(theta0, "f_bar_arma");
  const std::size_t p = theta0.p1() + theta0.p2();
  if (p == 0) return 0.0;
  ArfimaParams short_mem = theta0;
  short_mem.d = 0.0;
  const auto c = wold_coeffs(short_mem, h);
  const Eigen::MatrixXd l = l_matrix(short_mem, c, h);
  const FisherGamma fg = fisher_gamma(theta0, 1.0, truncation);
  return (fg.gamma11 * l * fg.gamma11.inverse() * l.transpose()).trace();
}

double ls_second_order_mspe(std::size_t p1, std::size_t v0) {
  if (p1 == 0) throw std::invalid_argument("ls_second_order_mspe: p1 must be >= 1");
  if (v0 > p1) throw std::invalid_argument("ls_second_order_mspe: requires v0 <= p1");
  return static_cast<double>(p1) + static_cast<double>(v0) * static_cast<double>(v0);
}

double ls_random_walk_multistep(std::size_t h) {
  if (h == 0) throw std::invalid_argument("ls_random_walk_multistep: h must be >= 1");
  return 2.0 * static_cast<double>(h) * static_cast<double>(h);
}

}  // namespace arfima
