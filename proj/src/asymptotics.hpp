#ifndef ARFIMA_ASYMPTOTICS_HPP
#define ARFIMA_ASYMPTOTICS_HPP

#include <Eigen/Dense>
#include <cstddef>

#include "model.hpp"

namespace arfima {

// Limiting score covariance of the residual gradient and its partitioned
// inverse.  Independent of d; the (p_bar, p_bar) entry is pi^2 sigma^2 / 6
// exactly.
struct FisherGamma {
  Eigen::MatrixXd gamma;      // p_bar x p_bar
  Eigen::MatrixXd gamma11;    // theta block
  Eigen::VectorXd gamma12;    // theta-d column
  double gamma22 = 0.0;       // pi^2 sigma^2 / 6
  Eigen::MatrixXd inv11;      // blocks of the partitioned inverse
  Eigen::VectorXd inv12;
  double inv22 = 0.0;
  std::size_t truncation = 0;
  bool truncation_warning = false;
};

FisherGamma fisher_gamma(const ArfimaParams& theta0, double sigma2,
                         std::size_t truncation);

// The h x h harmonic-tail matrix R(h); exact entries via the zeta(2) tail.
Eigen::MatrixXd r_matrix(std::size_t h);

// Cross-covariance of the theta-score series with the harmonic-weighted
// innovation sums; (p1+p2) x h.
Eigen::MatrixXd q_matrix(const ArfimaParams& theta0, double sigma2, std::size_t h,
                         std::size_t truncation);

// Second-order MSPE decomposition of the h-step CSS predictor.
struct MspeDecomposition {
  double f = 0.0;
  double g = 0.0;
  double j = 0.0;
  double total_second_order = 0.0;  // (f + g + 2 j) sigma^2
  double sigma2_h = 0.0;
  std::size_t h = 0;
  bool truncation_warning = false;
  Eigen::MatrixXd r;       // R(h)
  Eigen::MatrixXd q;       // Q_h
  Eigen::MatrixXd l;       // L_h
  Eigen::VectorXd c;       // (c_0 .. c_{h-1})
};

MspeDecomposition mspe_decomposition(const ArfimaParams& params0, double sigma2,
                                     std::size_t h, std::size_t truncation = 100000);

// Pure-I(d) special case: c_bar^T R(h) c_bar (per unit sigma^2).
double g_bar_pure_fractional(double d0, std::size_t h);

// d0 = 0 special case of the f-term (per unit sigma^2).
double f_bar_arma(const ArfimaParams& theta0, std::size_t h,
                  std::size_t truncation = 100000);

// Second-order one-step MSPE of the LS predictor under an integrated AR
// model with integration order v0: p1 + v0^2 (per unit sigma^2).
double ls_second_order_mspe(std::size_t p1, std::size_t v0);

// h-step LS limit for a random walk: 2 h^2 (per unit sigma^2).
double ls_random_walk_multistep(std::size_t h);

}  // namespace arfima

#endif
