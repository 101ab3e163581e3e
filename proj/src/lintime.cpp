#include "lintime.hpp"

#include <cmath>
#include <stdexcept>

namespace arfima {

namespace {

// Stability boundary: a root of modulus in (1, 1+kBoundaryTol] still counts
// as unstable, keeping the feasible set strictly inside the unit circle.
constexpr double kBoundaryTol = 1e-12;

std::size_t effective_degree(const LagPoly& p) {
  std::size_t deg = p.coeffs.size();
  while (deg > 0 && p.coeffs[deg - 1] == 0.0) --deg;
  return deg;
}

}  // namespace

std::vector<std::complex<double>> poly_inverse_roots(const LagPoly& p) {
  const std::size_t deg = effective_degree(p);
  if (deg == 0) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                               static_cast<Eigen::Index>(deg));
  for (std::size_t j = 0; j < deg; ++j)
    comp(0, static_cast<Eigen::Index>(j)) = p.coeffs[j];
  for (std::size_t i = 1; i < deg; ++i)
    comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> out;
  out.reserve(deg);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back(es.eigenvalues()(i));
  return out;
}

bool poly_is_stable(const LagPoly& p, double margin) {
  for (const auto& lambda : poly_inverse_roots(p)) {
    // |root| = 1/|lambda| must exceed (1 + margin)(1 + kBoundaryTol).
    if (std::abs(lambda) * (1.0 + margin) * (1.0 + kBoundaryTol) >= 1.0)
      return false;
  }
  return true;
}

bool have_common_root(const LagPoly& a, const LagPoly& b, double tol) {
  const auto ra = poly_inverse_roots(a);
  const auto rb = poly_inverse_roots(b);
  for (const auto& la : ra) {
    if (std::abs(la) < 1e-14) continue;  // zero eigenvalue = trailing-zero padding
    for (const auto& lb : rb) {
      if (std::abs(lb) < 1e-14) continue;
      // compare actual roots 1/la vs 1/lb
      if (std::abs(1.0 / la - 1.0 / lb) < tol) return true;
    }
  }
  return false;
}

std::vector<double> rational_expansion(const LagPoly& num, const LagPoly& den,
                                       std::size_t length) {
  if (length == 0) throw std::invalid_argument("rational_expansion: length must be >= 1");
  if (!poly_is_stable(den))
    throw std::domain_error("rational_expansion: denominator is not stable");
  const std::size_t pn = num.coeffs.size();
  const std::size_t pd = den.coeffs.size();
  std::vector<double> c(length, 0.0);
  c[0] = 1.0;
  for (std::size_t s = 1; s < length; ++s) {
    double acc = (s <= pn) ? -num.coeffs[s - 1] : 0.0;
    const std::size_t jmax = std::min(s, pd);
    for (std::size_t j = 1; j <= jmax; ++j) acc += den.coeffs[j - 1] * c[s - j];
    c[s] = acc;
  }
  return c;
}

Eigen::MatrixXd companion_a(std::span<const double> alpha,
                            std::span<const double> beta) {
  const std::size_t p1 = alpha.size();
  const std::size_t p2 = beta.size();
  const std::size_t m = p1 + p2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                            static_cast<Eigen::Index>(m));
  if (m == 0) return a;
  if (p1 == 0) {
    // state holds residuals only: pure shift (future residuals predict to 0)
    for (std::size_t i = 1; i < p2; ++i)
      a(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(i)) = 1.0;
    return a;
  }
  for (std::size_t i = 0; i < p1; ++i) a(static_cast<Eigen::Index>(i), 0) = alpha[i];
  for (std::size_t i = 0; i < p2; ++i)
    a(static_cast<Eigen::Index>(p1 + i), 0) = beta[i];
  for (std::size_t j = 1; j < p1; ++j)
    a(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(j)) = 1.0;
  for (std::size_t j = 1; j < p2; ++j)
    a(static_cast<Eigen::Index>(p1 + j - 1), static_cast<Eigen::Index>(p1 + j)) = 1.0;
  return a;
}

Eigen::MatrixXd companion_a_tilde(std::span<const double> alpha,
                                  std::span<const double> beta) {
  const std::size_t p1 = alpha.size();
  const std::size_t p2 = beta.size();
  const std::size_t m = p1 + p2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                            static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < p1; ++i) a(static_cast<Eigen::Index>(i), 0) = alpha[i];
  for (std::size_t j = 1; j < p1; ++j)
    a(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(j)) = 1.0;
  for (std::size_t i = 0; i < p2; ++i)
    a(static_cast<Eigen::Index>(p1 + i), static_cast<Eigen::Index>(p1)) = beta[i];
  for (std::size_t j = 1; j < p2; ++j)
    a(static_cast<Eigen::Index>(p1 + j - 1), static_cast<Eigen::Index>(p1 + j)) = 1.0;
  return a;
}

Eigen::VectorXd companion_power_apply(const Eigen::MatrixXd& a, unsigned k,
                                      const Eigen::VectorXd& v) {
  if (a.rows() != v.size())
    throw std::invalid_argument("companion_power_apply: dimension mismatch");
  Eigen::VectorXd r = v;
  for (unsigned i = 0; i < k; ++i) r = a * r;
  return r;
}

}  // namespace arfima
