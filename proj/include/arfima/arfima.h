/* C interface to the ARFIMA CSS library.
 *
 * All functions return an arfima_status; on failure a thread-local message
 * is available from arfima_last_error().  Handles are opaque and must be
 * released with the matching _free function (free functions accept NULL).
 */
#ifndef ARFIMA_ARFIMA_H
#define ARFIMA_ARFIMA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arfima_status {
  ARFIMA_OK = 0,
  ARFIMA_ERR_INVALID_ARGUMENT = 1, /* bad sizes, null pointers, bad enums */
  ARFIMA_ERR_DOMAIN = 2,           /* infeasible model, degenerate data */
  ARFIMA_ERR_NO_MEMORY = 3,
  ARFIMA_ERR_INTERNAL = 4
} arfima_status;

/* Message describing the most recent failure on this thread ("" if none).
 * The pointer stays valid until the next failing call on the same thread. */
const char* arfima_last_error(void);

/* ---- model handle ------------------------------------------------------ */

typedef struct arfima_model arfima_model;

/* eta = (alpha_1..alpha_p1, beta_1..beta_p2, d) for the model
 * A1(B) (1-B)^d y_t = A2(B) eps_t with A(z) = 1 - sum_j c_j z^j.
 * Fails with ARFIMA_ERR_DOMAIN if a lag polynomial is unstable, the
 * polynomials share a root, or the top coefficients are both zero. */
arfima_status arfima_model_create(const double* alpha, size_t p1,
                                  const double* beta, size_t p2, double d,
                                  arfima_model** out);
void arfima_model_free(arfima_model* model);

arfima_status arfima_model_order(const arfima_model* model, size_t* p1,
                                 size_t* p2);
/* alpha must hold p1 doubles, beta p2 doubles (either may be NULL if the
 * corresponding order is zero). */
arfima_status arfima_model_params(const arfima_model* model, double* alpha,
                                  double* beta, double* d);

/* ---- simulation and residuals ------------------------------------------ */

typedef enum arfima_innovation {
  ARFIMA_INNOVATION_GAUSSIAN = 0,
  ARFIMA_INNOVATION_UNIFORM = 1 /* mean 0, variance sigma^2 */
} arfima_innovation;

/* y and eps (eps may be NULL) must hold n doubles.  Deterministic in seed. */
arfima_status arfima_simulate(const arfima_model* model, double sigma, size_t n,
                              uint64_t seed, arfima_innovation innovation,
                              double* y, double* eps);

/* eps must hold n doubles. */
arfima_status arfima_residuals(const arfima_model* model, const double* y,
                               size_t n, double* eps);

/* Sum of squared residuals. */
arfima_status arfima_css_objective(const arfima_model* model, const double* y,
                                   size_t n, double* value);

/* grad must hold p1+p2+1 doubles (same eta ordering as creation). */
arfima_status arfima_css_gradient(const arfima_model* model, const double* y,
                                  size_t n, double* value, double* grad);

/* ---- estimation -------------------------------------------------------- */

typedef struct arfima_css_options {
  size_t starts_d;     /* coarse d grid size (default 9) */
  size_t local_starts; /* starts refined by the local optimizer (default 3) */
  size_t max_iter;     /* per-start iteration cap (default 200) */
  double grad_tol;     /* ||proj grad|| <= tol * (1 + S_n) (default 1e-7) */
} arfima_css_options;

void arfima_css_options_init(arfima_css_options* options);

typedef struct arfima_fit_info {
  double objective;
  double sigma2;
  size_t starts_used;
  int converged;
  int boundary; /* some estimate coordinate is on the box edge */
} arfima_fit_info;

/* Fits an ARFIMA(p1, d, p2) with theta in [-theta_bound, theta_bound]^{p1+p2}
 * and d in [d_lo, d_hi].  options and info may be NULL. */
arfima_status arfima_estimate(const double* y, size_t n, size_t p1, size_t p2,
                              double d_lo, double d_hi, double theta_bound,
                              const arfima_css_options* options,
                              arfima_model** out, arfima_fit_info* info);

/* ---- prediction -------------------------------------------------------- */

typedef enum arfima_predictor {
  ARFIMA_PREDICT_RECURSIVE = 0,   /* one-step rule iterated h times */
  ARFIMA_PREDICT_CLOSED_FORM = 1, /* equivalent closed-form evaluation */
  ARFIMA_PREDICT_LS = 2           /* least-squares AR baseline in levels */
} arfima_predictor;

/* point must hold h doubles (forecasts for lead 1..h).  sigma2_h, if not
 * NULL, receives the model-implied h-step innovation variance scaled by
 * sigma2 (0 for the LS baseline, which implies no such decomposition).
 * For ARFIMA_PREDICT_LS the model is only consulted for its AR order p1. */
arfima_status arfima_predict(const arfima_model* model, const double* y,
                             size_t n, size_t h, arfima_predictor predictor,
                             double sigma2, double* point, double* sigma2_h);

/* ---- asymptotic second-order MSPE -------------------------------------- */

typedef struct arfima_mspe_theory {
  double sigma2_h; /* h-step innovation variance sigma^2 sum c_s^2 */
  double f; /* short-memory estimation term */
  double g; /* fractional-order estimation term */
  double j; /* interaction term */
  double total; /* (f + g + 2 j) * sigma2 */
  int truncation_warning; /* series tail not negligible at the truncation */
} arfima_mspe_theory;

/* Asymptotic n * (MSPE - sigma2_h) for the h-step plug-in predictor at the
 * true model.  truncation = 0 selects the default (100000). */
arfima_status arfima_mspe_theory_eval(const arfima_model* model, double sigma2,
                                      size_t h, size_t truncation,
                                      arfima_mspe_theory* out);

/* Closed-form second-order MSPE of the LS baseline: one-step general case
 * and the multi-step random-walk case. */
arfima_status arfima_ls_theory_one_step(size_t p1, size_t v0, double* out);
arfima_status arfima_ls_theory_random_walk(size_t h, double* out);

/* ---- Monte Carlo ------------------------------------------------------- */

typedef struct arfima_mc_spec {
  const arfima_model* model;
  double sigma;
  arfima_innovation innovation;
  size_t fit_p1, fit_p2;   /* CSS fitting orders */
  double fit_d_lo, fit_d_hi, fit_theta_bound;
  size_t ls_p1;            /* LS baseline order */
  size_t n, h, replications;
  uint64_t base_seed;
  arfima_predictor predictor; /* recursive/closed-form = CSS, LS = baseline */
  size_t threads;             /* 0 = hardware concurrency */
} arfima_mc_spec;

void arfima_mc_spec_init(arfima_mc_spec* spec);

typedef struct arfima_mc_result {
  double estimate;  /* empirical n * (MSPE - sigma2_h) */
  double std_error; /* NaN when fewer than 2 replications succeed */
  size_t replications_used;
  size_t failures;
  int quality_warning; /* failures exceed 5% of replications */
} arfima_mc_result;

arfima_status arfima_mc_mspe(const arfima_mc_spec* spec,
                             const arfima_css_options* options,
                             arfima_mc_result* out);

typedef struct arfima_table1_row {
  char model_id[48];
  char method[8]; /* "css" or "ls" */
  size_t n, h, reps;
  double estimate, std_error, theory_value;
} arfima_table1_row;

#define ARFIMA_TABLE1_ROWS 6

/* rows must hold ARFIMA_TABLE1_ROWS entries: the three benchmark processes,
 * each estimated with the CSS predictor and the LS baseline. */
arfima_status arfima_mc_table1(size_t n, size_t replications,
                               uint64_t base_seed, size_t threads,
                               const arfima_css_options* options,
                               arfima_table1_row* rows);

#ifdef __cplusplus
}
#endif

#endif /* ARFIMA_ARFIMA_H */
