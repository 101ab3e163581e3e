#include "fracdiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arfima {

std::vector<double> frac_coeffs(double d, std::size_t length) {
  if (length == 0) throw std::invalid_argument("frac_coeffs: length must be >= 1");
  if (!std::isfinite(d)) throw std::invalid_argument("frac_coeffs: d must be finite");
  std::vector<double> pi(length);
  pi[0] = 1.0;
  // Carry the recursion in extended precision so rounding does not compound
  // over long expansions; each coefficient is rounded once on store.
  long double acc = 1.0L;
  const long double dl = d;
  for (std::size_t k = 1; k < length; ++k) {
    acc = acc * (static_cast<long double>(k) - 1.0L - dl) / static_cast<long double>(k);
    pi[k] = static_cast<double>(acc);
  }
  return pi;
}

std::vector<double> frac_coeffs_dd(double d, std::size_t length) {
  if (length == 0) throw std::invalid_argument("frac_coeffs_dd: length must be >= 1");
  if (!std::isfinite(d)) throw std::invalid_argument("frac_coeffs_dd: d must be finite");
  std::vector<double> pi = frac_coeffs(d, length);
  std::vector<double> dpi(length, 0.0);
  for (std::size_t k = 1; k < length; ++k) {
    const double kk = static_cast<double>(k);
    dpi[k] = (dpi[k - 1] * (kk - 1.0 - d) - pi[k - 1]) / kk;
  }
  return dpi;
}

std::vector<double> apply_frac_diff(std::span<const double> y, double d) {
  if (y.empty()) throw std::invalid_argument("apply_frac_diff: empty series");
  const std::size_t n = y.size();
  const std::vector<double> pi = frac_coeffs(d, n);
  std::vector<double> v(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    long double acc = 0.0L;  // long filters: keep rounding from compounding
    for (std::size_t k = 0; k <= t; ++k)
      acc += static_cast<long double>(pi[k]) * static_cast<long double>(y[t - k]);
    v[t] = static_cast<double>(acc);
  }
  return v;
}

std::vector<double> log_diff_filter(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("log_diff_filter: empty series");
  const std::size_t n = x.size();
  std::vector<double> z(n, 0.0);
  for (std::size_t t = 1; t < n; ++t) {
    long double acc = 0.0L;
    for (std::size_t k = 1; k <= t; ++k)
      acc += static_cast<long double>(x[t - k]) / static_cast<long double>(k);
    z[t] = -static_cast<double>(acc);
  }
  return z;
}

std::vector<double> log_filter_coeffs(std::size_t length) {
  std::vector<double> c(length, 0.0);
  for (std::size_t k = 1; k < length; ++k) c[k] = -1.0 / static_cast<double>(k);
  return c;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                             std::size_t length) {
  std::vector<double> c(length, 0.0);
  const std::size_t na = std::min(a.size(), length);
  const std::size_t nb = std::min(b.size(), length);
  for (std::size_t k = 0; k < length; ++k) {
    const std::size_t lo = (k + 1 > nb) ? k + 1 - nb : 0;
    const std::size_t hi = std::min(na, k + 1);
    long double acc = 0.0L;  // extended precision: terms may cancel heavily
    for (std::size_t i = lo; i < hi; ++i)
      acc += static_cast<long double>(a[i]) * static_cast<long double>(b[k - i]);
    c[k] = static_cast<double>(acc);
  }
  return c;
}

}  // namespace arfima
