#ifndef ARFIMA_FRACDIFF_HPP
#define ARFIMA_FRACDIFF_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace arfima {

// Coefficients pi_0..pi_{length-1} of (1-z)^d, generated by the
// multiplicative recursion pi_k = pi_{k-1} (k-1-d)/k.  No gamma functions.
std::vector<double> frac_coeffs(double d, std::size_t length);

// d/dd of frac_coeffs, by differentiating the recursion.
std::vector<double> frac_coeffs_dd(double d, std::size_t length);

// v_t = sum_{k=0}^{t-1} pi_k(d) y_{t-k}; exact under y_s = 0, s <= 0.
std::vector<double> apply_frac_diff(std::span<const double> y, double d);

// z_t = -sum_{k=1}^{t-1} x_{t-k}/k, the action of log(1-B).
std::vector<double> log_diff_filter(std::span<const double> x);

// Impulse response of log(1-B): [0, -1, -1/2, -1/3, ...].
std::vector<double> log_filter_coeffs(std::size_t length);

// Truncated Cauchy product, first `length` coefficients of a(z)b(z).
std::vector<double> convolve(std::span<const double> a,
                             std::span<const double> b, std::size_t length);

}  // namespace arfima

#endif
