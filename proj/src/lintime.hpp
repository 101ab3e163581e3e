#ifndef ARFIMA_LINTIME_HPP
#define ARFIMA_LINTIME_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace arfima {

// Lag polynomial 1 - c_1 z - ... - c_p z^p (constant term implicitly 1).
struct LagPoly {
  std::vector<double> coeffs;  // c_1..c_p

  std::size_t degree() const { return coeffs.size(); }
};

// Inverse roots (eigenvalues of the companion matrix); empty for degree 0.
std::vector<std::complex<double>> poly_inverse_roots(const LagPoly& p);

// True iff every root has modulus > 1 + 1e-12 (roots on or within that
// band around the unit circle count as unstable).
// Stable means all roots strictly outside the circle of radius 1 + margin.
bool poly_is_stable(const LagPoly& p, double margin = 0.0);

// True iff the two polynomials share a root within `tol`.
bool have_common_root(const LagPoly& a, const LagPoly& b, double tol = 1e-8);

// First `length` power-series coefficients of num(z)/den(z); den must be
// stable.  Coefficient 0 is 1.
std::vector<double> rational_expansion(const LagPoly& num, const LagPoly& den,
                                       std::size_t length);

// Companion matrix A(theta) of the multi-step predictor state recursion.
Eigen::MatrixXd companion_a(std::span<const double> alpha,
                            std::span<const double> beta);

// Block-diagonal companion A~(theta) entering L_h.
Eigen::MatrixXd companion_a_tilde(std::span<const double> alpha,
                                  std::span<const double> beta);

// A^k v by iterated multiplication (k is a small horizon).
Eigen::VectorXd companion_power_apply(const Eigen::MatrixXd& a, unsigned k,
                                      const Eigen::VectorXd& v);

}  // namespace arfima

#endif
