#ifndef ARFIMA_FORECAST_HPP
#define ARFIMA_FORECAST_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "model.hpp"

namespace arfima {

enum class ForecastMethod { kCssRecursive, kCssClosedForm, kLs };

std::string to_string(ForecastMethod m);

struct ForecastResult {
  std::size_t horizon = 0;
  std::vector<double> point;  // y_hat_{n+1} .. y_hat_{n+h}
  ForecastMethod method = ForecastMethod::kCssRecursive;
  double sigma2_h = 0.0;  // sigma^2 sum_{s<h} c_s^2 at the supplied params
};

// h-step predictor by recursing the one-step rule with earlier forecasts
// substituted for unobserved values (implied future innovations zero).
ForecastResult predict_css_recursive(std::span<const double> y,
                                     const ArfimaParams& params, std::size_t h,
                                     double sigma2 = 1.0);

// Same predictor in closed form: G_d(B) y_n plus the companion-matrix
// correction terms.  Agrees with the recursive route to rounding error.
ForecastResult predict_css_closed_form(std::span<const double> y,
                                       const ArfimaParams& params, std::size_t h,
                                       double sigma2 = 1.0);

// Least-squares AR(p1) in levels (the integrated-AR baseline), iterated
// h steps with plugged-in forecasts.
ForecastResult predict_ls_integrated_ar(std::span<const double> y, std::size_t p1,
                                        std::size_t h);

// The fitted LS coefficients (exposed for diagnostics and tests).
std::vector<double> ls_ar_coefficients(std::span<const double> y, std::size_t p1);

// MA(infinity) coefficients c_s of the model, s = 0..length-1.
std::vector<double> wold_coeffs(const ArfimaParams& params, std::size_t length);

// sigma^2 sum_{s=0}^{h-1} c_s^2
double sigma2_h(const ArfimaParams& params, std::size_t h, double sigma2);

}  // namespace arfima

#endif
