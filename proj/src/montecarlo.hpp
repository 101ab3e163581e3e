#ifndef ARFIMA_MONTECARLO_HPP
#define ARFIMA_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "css.hpp"
#include "model.hpp"

namespace arfima {

enum class PredictorKind { kCss, kLs };

struct ExperimentSpec {
  ArfimaParams model;
  double sigma = 1.0;
  Innovation innovation = Innovation::kGaussian;
  ParamSpace fit_space;    // used by the CSS predictor
  std::size_t ls_p1 = 3;   // order of the LS baseline
  std::size_t n = 1000;
  std::size_t h = 1;
  std::size_t replications = 2000;
  std::uint64_t base_seed = 1;
  PredictorKind predictor = PredictorKind::kCss;
  std::size_t threads = 0;  // 0 = hardware concurrency
  CssConfig css_config;
};

struct MspeEstimate {
  double empirical_second_order = 0.0;  // n (mean sq. pred. error - sigma2_h)
  double std_error = 0.0;               // NaN when replications_used < 2
  std::size_t replications_used = 0;
  std::size_t failures = 0;
  bool quality_warning = false;  // failures exceed 5% of replications
};

// Replication r uses seed base_seed + r; excluded (failed) replications are
// counted, never silently dropped.  Aggregation is a fixed-order compensated
// sum, so results do not depend on the worker count.
MspeEstimate empirical_second_order_mspe(const ExperimentSpec& spec);

struct Table1Row {
  std::string model_id;
  std::string method;
  std::size_t n = 0;
  std::size_t h = 0;
  std::size_t reps = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double theory_value = 0.0;
};

struct Table1Model {
  std::string id;
  ArfimaParams params;
  double css_theory = 0.0;
  double ls_theory = 0.0;
};

// The three integrated-AR(3) data-generating processes of the one-step
// comparison study (integration orders 2, 1, 0).
std::vector<Table1Model> table1_models();

std::vector<Table1Row> run_table1(std::size_t n, std::size_t replications,
                                  std::uint64_t base_seed, std::size_t threads = 0,
                                  const CssConfig& css_config = {});

// sum_t (eps_t(eta) - eps_t(eta0))^2
double objective_gap(std::span<const double> y, const ArfimaParams& truth,
                     const ArfimaParams& eta);

// min over the grid of a_n(d)^{-1} sum_t (eps_t(eta) - eps_t(eta0))^2 with
// a_n(d) = n for d >= d0 - 1/2 and n^{2(d0-d)} below.
double lemma1_statistic(std::span<const double> y, const ArfimaParams& truth,
                        std::span<const ArfimaParams> grid, double delta);

struct MomentRow {
  std::size_t n = 0;
  double moment = 0.0;  // empirical E || sqrt(n)(eta_hat - eta0) ||^q
  std::size_t failures = 0;
};

std::vector<MomentRow> moment_stability(const ArfimaParams& model, double sigma,
                                        const ParamSpace& fit_space, double q,
                                        std::span<const std::size_t> n_grid,
                                        std::size_t reps, std::uint64_t base_seed,
                                        std::size_t threads = 0,
                                        const CssConfig& css_config = {});

// Runs fn(i) for i in [0, count) on `threads` workers (index-strided).
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace arfima

#endif
