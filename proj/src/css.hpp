#ifndef ARFIMA_CSS_HPP
#define ARFIMA_CSS_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <span>

#include "model.hpp"

namespace arfima {

struct CssConfig {
  std::size_t starts_d = 9;      // coarse grid over [d_lo, d_hi]
  std::size_t local_starts = 3;  // best grid points refined by the local optimizer
  std::size_t max_iter = 200;
  double grad_tol = 1e-7;        // converged when ||proj grad|| <= tol * (1 + S_n)
};

struct CssFit {
  ArfimaParams estimate;
  double objective_value = 0.0;
  double sigma2_hat = 0.0;
  std::size_t n_starts = 0;
  bool converged = false;
  bool boundary_flag = false;
};

// Minimizes S_n over the box by multi-start projected BFGS with the analytic
// gradient; infeasible proposals (unstable polynomials, shared roots) are
// rejected by the line search.
CssFit estimate_css(std::span<const double> y, const ParamSpace& space,
                    const CssConfig& config = {});

// sqrt(n) (eta_hat - eta0)
Eigen::VectorXd scaled_error(const CssFit& fit, const ArfimaParams& truth,
                             std::size_t n);

}  // namespace arfima

#endif
