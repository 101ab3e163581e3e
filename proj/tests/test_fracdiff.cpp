#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fracdiff.hpp"

using namespace arfima;

TEST_CASE("frac_coeffs known expansions") {
  const auto d1 = frac_coeffs(1.0, 4);
  CHECK(d1[0] == 1.0);
  CHECK(d1[1] == -1.0);
  CHECK(d1[2] == 0.0);
  CHECK(d1[3] == 0.0);

  const auto d0 = frac_coeffs(0.0, 3);
  CHECK(d0[0] == 1.0);
  CHECK(d0[1] == 0.0);
  CHECK(d0[2] == 0.0);

  // (1-z)^{-0.4}: pi_1 = -d = 0.4, pi_2 = d(d-1)/2 = 0.28
  const auto dm = frac_coeffs(-0.4, 3);
  CHECK(dm[0] == doctest::Approx(1.0));
  CHECK(dm[1] == doctest::Approx(0.4));
  CHECK(dm[2] == doctest::Approx(0.28));
}

TEST_CASE("frac_coeffs vanishes past integer orders") {
  for (int m = 0; m <= 4; ++m) {
    const auto c = frac_coeffs(static_cast<double>(m), 12);
    for (std::size_t k = static_cast<std::size_t>(m) + 1; k < 12; ++k)
      CHECK(c[k] == 0.0);
  }
}

TEST_CASE("frac_coeffs rejects non-finite d") {
  CHECK_THROWS_AS(frac_coeffs(std::nan(""), 4), std::invalid_argument);
  CHECK_THROWS_AS(frac_coeffs(INFINITY, 4), std::invalid_argument);
}

TEST_CASE("apply_frac_diff known filters") {
  const std::vector<double> y{1.0, 2.0, 3.0};
  const auto id = apply_frac_diff(y, 0.0);
  CHECK(id == y);

  const auto diff = apply_frac_diff(y, 1.0);
  CHECK(diff[0] == 1.0);
  CHECK(diff[1] == 1.0);
  CHECK(diff[2] == 1.0);

  // impulse response equals the coefficient sequence itself
  const std::vector<double> impulse{1.0, 0.0, 0.0};
  const auto r = apply_frac_diff(impulse, 0.3);
  CHECK(r[0] == doctest::Approx(1.0));
  CHECK(r[1] == doctest::Approx(-0.3));
  CHECK(r[2] == doctest::Approx(-0.105));
}

TEST_CASE("log_diff_filter known outputs") {
  const std::vector<double> impulse{1.0, 0.0, 0.0, 0.0};
  const auto z = log_diff_filter(impulse);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == doctest::Approx(-1.0));
  CHECK(z[2] == doctest::Approx(-0.5));
  CHECK(z[3] == doctest::Approx(-1.0 / 3.0));

  const std::vector<double> zero{0.0, 0.0, 0.0};
  CHECK(log_diff_filter(zero) == zero);

  const std::vector<double> ones{1.0, 1.0, 1.0};
  const auto z3 = log_diff_filter(ones);
  CHECK(z3[0] == 0.0);
  CHECK(z3[1] == doctest::Approx(-1.0));
  CHECK(z3[2] == doctest::Approx(-1.5));
}

TEST_CASE("convolution of (1-z)^d with (1-z)^{-d} is the unit impulse") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> dd(-5.0, 5.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double d = dd(rng);
    const std::size_t L = 512;
    const auto a = frac_coeffs(d, L);
    const auto b = frac_coeffs(-d, L);
    const auto c = convolve(a, b, L);
    // The inverse identity cancels terms as large as the biggest coefficient,
    // so the achievable accuracy is relative to that scale (coefficients grow
    // like k^{|d|-1}, reaching ~1e9 near |d| = 5).
    double scale = 1.0;
    for (std::size_t k = 0; k < L; ++k)
      scale = std::max({scale, std::abs(a[k]), std::abs(b[k])});
    const double tol = 1e-10 * scale;
    CHECK(std::abs(c[0] - 1.0) <= tol);
    for (std::size_t k = 1; k < L; ++k) CHECK(std::abs(c[k]) <= tol);
  }
}

TEST_CASE("semigroup property of fractional differencing") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> dd(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> y(256);
    for (double& v : y) v = g(rng);
    const double d1 = dd(rng), d2 = dd(rng);
    const auto once = apply_frac_diff(apply_frac_diff(y, d1), d2);
    const auto both = apply_frac_diff(y, d1 + d2);
    for (std::size_t t = 0; t < y.size(); ++t) {
      const double scale = std::max(1.0, std::abs(both[t]));
      CHECK(std::abs(once[t] - both[t]) / scale <= 1e-9);
    }
  }
}

TEST_CASE("d-derivative of the coefficients equals log-filter convolution") {
  // d/dd (1-z)^d = (1-z)^d log(1-z); compare the differentiated recursion
  // with the convolution route.
  for (const double d : {-1.3, -0.4, 0.0, 0.3, 0.7, 1.0, 2.5}) {
    const std::size_t L = 256;
    const auto analytic = frac_coeffs_dd(d, L);
    const auto conv = convolve(frac_coeffs(d, L), log_filter_coeffs(L), L);
    for (std::size_t k = 0; k < L; ++k)
      CHECK(std::abs(analytic[k] - conv[k]) <= 1e-8);
  }
}
