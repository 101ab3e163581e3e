// Shared helpers for the test binaries: seeded RNG draws and random feasible
// model generation via reflection coefficients (Levinson recursion), which
// guarantees stable lag polynomials by construction.
#ifndef ARFIMA_TEST_UTIL_HPP
#define ARFIMA_TEST_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "model.hpp"

namespace arfima_test {

// Stable lag polynomial coefficients c_1..c_p of 1 - sum c_j z^j, built from
// reflection coefficients drawn in (-bound, bound).
inline std::vector<double> stable_poly(std::size_t p, std::mt19937_64& rng,
                                       double bound = 0.9) {
  std::uniform_real_distribution<double> refl(-bound, bound);
  // phi in the "1 + sum phi_j z^j" sign convention during the recursion
  std::vector<double> phi;
  for (std::size_t m = 1; m <= p; ++m) {
    const double k = refl(rng);
    std::vector<double> next(m);
    for (std::size_t j = 0; j + 1 < m; ++j)
      next[j] = phi[j] + k * phi[m - 2 - j];
    next[m - 1] = k;
    phi = std::move(next);
  }
  for (double& c : phi) c = -c;  // back to 1 - sum c_j z^j
  return phi;
}

inline arfima::ArfimaParams random_model(std::size_t p1, std::size_t p2,
                                         double d_lo, double d_hi,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dd(d_lo, d_hi);
  for (;;) {
    arfima::ArfimaParams m;
    m.alpha = stable_poly(p1, rng);
    m.beta = stable_poly(p2, rng);
    m.d = dd(rng);
    if (arfima::is_feasible(m)) return m;
  }
}

// Random feasible model with orders drawn up to the given maxima.
inline arfima::ArfimaParams random_model_any_order(std::size_t max_p1,
                                                   std::size_t max_p2,
                                                   double d_lo, double d_hi,
                                                   std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> o1(0, max_p1), o2(0, max_p2);
  return random_model(o1(rng), o2(rng), d_lo, d_hi, rng);
}

inline std::vector<double> random_series(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> y(n);
  for (double& v : y) v = g(rng);
  return y;
}

// Ordinary least-squares slope of v on u.
inline double regression_slope(const std::vector<double>& u,
                               const std::vector<double>& v) {
  const double n = static_cast<double>(u.size());
  double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    suu += u[i] * u[i];
    suv += u[i] * v[i];
  }
  return (n * suv - su * sv) / (n * suu - su * su);
}

}  // namespace arfima_test

#endif
