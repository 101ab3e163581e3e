#ifndef ARFIMA_MODEL_HPP
#define ARFIMA_MODEL_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lintime.hpp"

namespace arfima {

// Parameter vector eta = (alpha_1..alpha_p1, beta_1..beta_p2, d).
struct ArfimaParams {
  std::vector<double> alpha;
  std::vector<double> beta;
  double d = 0.0;

  std::size_t p1() const { return alpha.size(); }
  std::size_t p2() const { return beta.size(); }
  std::size_t p_bar() const { return alpha.size() + beta.size() + 1; }

  LagPoly ar_poly() const { return LagPoly{alpha}; }
  LagPoly ma_poly() const { return LagPoly{beta}; }

  Eigen::VectorXd as_vector() const;
  static ArfimaParams from_vector(const Eigen::VectorXd& eta, std::size_t p1,
                                  std::size_t p2);
};

// Compact feasible box Pi x D.
struct ParamSpace {
  std::size_t p1 = 0;
  std::size_t p2 = 0;
  double d_lo = -1.0;
  double d_hi = 3.0;
  std::vector<double> theta_lo;  // per-coordinate; sized p1+p2
  std::vector<double> theta_hi;
  // Requires lag-polynomial roots outside radius 1 + margin, making the
  // feasible set compact: without it the optimizer can mimic an extra unit
  // root with a near-boundary AR factor instead of adjusting d.
  double stability_margin = 0.0;

  static ParamSpace make(std::size_t p1, std::size_t p2, double d_lo = -1.0,
                         double d_hi = 3.0, double theta_bound = 2.0);
  void validate() const;
};

struct Series {
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
};

enum class Innovation { kGaussian, kUniform };

// Feasibility per the stationarity/invertibility box: both lag polynomials
// stable, no common zeros, |alpha_p1|+|beta_p2| > 0 when p1+p2 > 0, and all
// coordinates inside the box.
bool is_feasible(const ArfimaParams& params, const ParamSpace& space);

// Same checks without a box (used where only the model constraints matter).
bool is_feasible(const ArfimaParams& params);

// Names the first violated constraint, or "" if feasible.
std::string feasibility_violation(const ArfimaParams& params);

struct SimulationResult {
  Series y;
  std::vector<double> innovations;
};

SimulationResult simulate(const ArfimaParams& params, double sigma, std::size_t n,
                          std::uint64_t rng_seed,
                          Innovation innovation = Innovation::kGaussian);

std::vector<double> residuals(std::span<const double> y, const ArfimaParams& params);

double css_objective(std::span<const double> y, const ArfimaParams& params);

// Gradient rows grad(t, i) = d eps_t / d eta_i; optional Hessian slices.
struct DerivSeries {
  Eigen::MatrixXd grad;                 // n x p_bar
  std::vector<Eigen::MatrixXd> hess;    // n slices, each p_bar x p_bar (may be empty)
};

DerivSeries residual_derivatives(std::span<const double> y, const ArfimaParams& params,
                                 bool with_hessian = true);

// Objective S_n and its analytic gradient in one pass.
double css_objective_gradient(std::span<const double> y, const ArfimaParams& params,
                              Eigen::VectorXd& grad_out);

// Coefficients b_s of (1-z)^{d-d0} A_{2,theta0} A_{1,theta0}^{-1}
// A_{1,theta} A_{2,theta}^{-1} and their eta-derivatives (columns ordered
// alpha, beta, d).
struct BSeries {
  std::vector<double> b;
  Eigen::MatrixXd b_grad;  // length x p_bar
};

BSeries b_series(const ArfimaParams& params, const ArfimaParams& truth,
                 std::size_t length);

// Score coefficient columns b_{s,i}(eta0) at params = truth (closed forms;
// cheap even for very long truncations).  Row s=0 is zero.
Eigen::MatrixXd score_coeffs(const ArfimaParams& truth, std::size_t length);

}  // namespace arfima

#endif
