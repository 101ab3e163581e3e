#include "arfima/arfima.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "asymptotics.hpp"
#include "css.hpp"
#include "forecast.hpp"
#include "model.hpp"
#include "montecarlo.hpp"

struct arfima_model {
  arfima::ArfimaParams params;
};

namespace {

thread_local std::string g_last_error;

arfima_status fail(arfima_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
arfima_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(ARFIMA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(ARFIMA_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ARFIMA_ERR_NO_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(ARFIMA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ARFIMA_ERR_INTERNAL, "unknown error");
  }
}

arfima_status require(bool ok, const char* message) {
  return ok ? ARFIMA_OK : fail(ARFIMA_ERR_INVALID_ARGUMENT, message);
}

arfima::CssConfig to_config(const arfima_css_options* options) {
  arfima::CssConfig cfg;
  if (options != nullptr) {
    cfg.starts_d = options->starts_d;
    cfg.local_starts = options->local_starts;
    cfg.max_iter = options->max_iter;
    cfg.grad_tol = options->grad_tol;
  }
  return cfg;
}

void copy_if(double* dst, const std::vector<double>& src) {
  if (dst != nullptr && !src.empty())
    std::memcpy(dst, src.data(), src.size() * sizeof(double));
}

}  // namespace

extern "C" {

const char* arfima_last_error(void) { return g_last_error.c_str(); }

arfima_status arfima_model_create(const double* alpha, size_t p1,
                                  const double* beta, size_t p2, double d,
                                  arfima_model** out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  if (auto s = require(p1 == 0 || alpha != nullptr, "alpha must not be NULL"))
    return s;
  if (auto s = require(p2 == 0 || beta != nullptr, "beta must not be NULL"))
    return s;
  return guarded([&] {
    arfima::ArfimaParams params;
    params.alpha.assign(alpha, alpha + p1);
    params.beta.assign(beta, beta + p2);
    params.d = d;
    const std::string why = arfima::feasibility_violation(params);
    if (!why.empty()) throw std::domain_error(why);
    *out = new arfima_model{std::move(params)};
    return ARFIMA_OK;
  });
}

void arfima_model_free(arfima_model* model) { delete model; }

arfima_status arfima_model_order(const arfima_model* model, size_t* p1,
                                 size_t* p2) {
  if (auto s = require(model != nullptr, "model must not be NULL")) return s;
  if (p1 != nullptr) *p1 = model->params.p1();
  if (p2 != nullptr) *p2 = model->params.p2();
  return ARFIMA_OK;
}

arfima_status arfima_model_params(const arfima_model* model, double* alpha,
                                  double* beta, double* d) {
  if (auto s = require(model != nullptr, "model must not be NULL")) return s;
  if (auto s = require(model->params.p1() == 0 || alpha != nullptr,
                       "alpha must not be NULL"))
    return s;
  if (auto s = require(model->params.p2() == 0 || beta != nullptr,
                       "beta must not be NULL"))
    return s;
  copy_if(alpha, model->params.alpha);
  copy_if(beta, model->params.beta);
  if (d != nullptr) *d = model->params.d;
  return ARFIMA_OK;
}

arfima_status arfima_simulate(const arfima_model* model, double sigma, size_t n,
                              uint64_t seed, arfima_innovation innovation,
                              double* y, double* eps) {
  if (auto s = require(model != nullptr, "model must not be NULL")) return s;
  if (auto s = require(y != nullptr, "y must not be NULL")) return s;
  if (auto s = require(innovation == ARFIMA_INNOVATION_GAUSSIAN ||
                           innovation == ARFIMA_INNOVATION_UNIFORM,
                       "unknown innovation kind"))
    return s;
  return guarded([&] {
    const auto sim = arfima::simulate(model->params, sigma, n, seed,
                                      innovation == ARFIMA_INNOVATION_GAUSSIAN
                                          ? arfima::Innovation::kGaussian
                                          : arfima::Innovation::kUniform);
    copy_if(y, sim.y.values);
    copy_if(eps, sim.innovations);
    return ARFIMA_OK;
  });
}

arfima_status arfima_residuals(const arfima_model* model, const double* y,
                               size_t n, double* eps) {
  if (auto s = require(model != nullptr, "model must not be NULL")) return s;
  if (auto s = require(y != nullptr && eps != nullptr,
                       "y and eps must not be NULL"))
    return s;
  return guarded([&] {
    const auto r = arfima::residuals({y, n}, model->params);
    copy_if(eps, r);
    return ARFIMA_OK;
  });
}

arfima_status arfima_css_objective(const arfima_model* model, const double* y,
                                   size_t n, double* value) {
  if (auto s = require(model != nullptr, "model must not be NULL")) return s;
  if (auto s = require(y != nullptr && value != nullptr,
                       "y and value must not be NULL"))
    return s;
  return guarded([&] {
    *value = arfima::css_objective({y, n}, model->params);
    return ARFIMA_OK;
  });
}

arfima_status arfima_css_gradient(const arfima_model* model, const double* y,
                                  size_t n, double* value, double* grad) {
  if (auto s = require(model != nullptr, "model must not be NULL")) return s;
  if (auto s = require(y != nullptr && value != nullptr && grad != nullptr,
                       "y, value, and grad must not be NULL"))
    return s;
  return guarded([&] {
    Eigen::VectorXd g;
    *value = arfima::css_objective_gradient({y, n}, model->params, g);
    std::memcpy(grad, g.data(), static_cast<size_t>(g.size()) * sizeof(double));
    return ARFIMA_OK;
  });
}

void arfima_css_options_init(arfima_css_options* options) {
  if (options == nullptr) return;
  const arfima::CssConfig defaults;
  options->starts_d = defaults.starts_d;
  options->local_starts = defaults.local_starts;
  options->max_iter = defaults.max_iter;
  options->grad_tol = defaults.grad_tol;
}

arfima_status arfima_estimate(const double* y, size_t n, size_t p1, size_t p2,
                              double d_lo, double d_hi, double theta_bound,
                              const arfima_css_options* options,
                              arfima_model** out, arfima_fit_info* info) {
  if (auto s = require(y != nullptr && out != nullptr,
                       "y and out must not be NULL"))
    return s;
  return guarded([&] {
    const auto space = arfima::ParamSpace::make(p1, p2, d_lo, d_hi, theta_bound);
    const arfima::CssFit fit =
        arfima::estimate_css({y, n}, space, to_config(options));
    if (info != nullptr) {
      info->objective = fit.objective_value;
      info->sigma2 = fit.sigma2_hat;
      info->starts_used = fit.n_starts;
      info->converged = fit.converged ? 1 : 0;
      info->boundary = fit.boundary_flag ? 1 : 0;
    }
    *out = new arfima_model{fit.estimate};
    return ARFIMA_OK;
  });
}

arfima_status arfima_predict(const arfima_model* model, const double* y,
                             size_t n, size_t h, arfima_predictor predictor,
                             double sigma2, double* point, double* sigma2_h) {
  if (auto s = require(model != nullptr, "model must not be NULL")) return s;
  if (auto s = require(y != nullptr && point != nullptr,
                       "y and point must not be NULL"))
    return s;
  return guarded([&] {
    arfima::ForecastResult r;
    switch (predictor) {
      case ARFIMA_PREDICT_RECURSIVE:
        r = arfima::predict_css_recursive({y, n}, model->params, h, sigma2);
        break;
      case ARFIMA_PREDICT_CLOSED_FORM:
        r = arfima::predict_css_closed_form({y, n}, model->params, h, sigma2);
        break;
      case ARFIMA_PREDICT_LS:
        r = arfima::predict_ls_integrated_ar({y, n}, model->params.p1(), h);
        break;
      default:
        throw std::invalid_argument("unknown predictor kind");
    }
    copy_if(point, r.point);
    if (sigma2_h != nullptr) *sigma2_h = r.sigma2_h;
    return ARFIMA_OK;
  });
}

arfima_status arfima_mspe_theory_eval(const arfima_model* model, double sigma2,
                                      size_t h, size_t truncation,
                                      arfima_mspe_theory* out) {
  if (auto s = require(model != nullptr && out != nullptr,
                       "model and out must not be NULL"))
    return s;
  return guarded([&] {
    const auto m = truncation == 0
                       ? arfima::mspe_decomposition(model->params, sigma2, h)
                       : arfima::mspe_decomposition(model->params, sigma2, h,
                                                    truncation);
    out->sigma2_h = m.sigma2_h;
    out->f = m.f;
    out->g = m.g;
    out->j = m.j;
    out->total = m.total_second_order;
    out->truncation_warning = m.truncation_warning ? 1 : 0;
    return ARFIMA_OK;
  });
}

arfima_status arfima_ls_theory_one_step(size_t p1, size_t v0, double* out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  return guarded([&] {
    *out = arfima::ls_second_order_mspe(p1, v0);
    return ARFIMA_OK;
  });
}

arfima_status arfima_ls_theory_random_walk(size_t h, double* out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  if (auto s = require(h >= 1, "h must be >= 1")) return s;
  *out = arfima::ls_random_walk_multistep(h);
  return ARFIMA_OK;
}

void arfima_mc_spec_init(arfima_mc_spec* spec) {
  if (spec == nullptr) return;
  *spec = arfima_mc_spec{};
  spec->sigma = 1.0;
  spec->innovation = ARFIMA_INNOVATION_GAUSSIAN;
  spec->fit_p1 = 3;
  spec->fit_d_lo = -1.0;
  spec->fit_d_hi = 3.0;
  spec->fit_theta_bound = 2.0;
  spec->ls_p1 = 3;
  spec->n = 1000;
  spec->h = 1;
  spec->replications = 2000;
  spec->base_seed = 1;
  spec->predictor = ARFIMA_PREDICT_RECURSIVE;
}

arfima_status arfima_mc_mspe(const arfima_mc_spec* spec,
                             const arfima_css_options* options,
                             arfima_mc_result* out) {
  if (auto s = require(spec != nullptr && out != nullptr,
                       "spec and out must not be NULL"))
    return s;
  if (auto s = require(spec->model != nullptr, "spec->model must not be NULL"))
    return s;
  return guarded([&] {
    arfima::ExperimentSpec es;
    es.model = spec->model->params;
    es.sigma = spec->sigma;
    es.innovation = spec->innovation == ARFIMA_INNOVATION_GAUSSIAN
                        ? arfima::Innovation::kGaussian
                        : arfima::Innovation::kUniform;
    es.fit_space =
        arfima::ParamSpace::make(spec->fit_p1, spec->fit_p2, spec->fit_d_lo,
                                 spec->fit_d_hi, spec->fit_theta_bound);
    es.ls_p1 = spec->ls_p1;
    es.n = spec->n;
    es.h = spec->h;
    es.replications = spec->replications;
    es.base_seed = spec->base_seed;
    es.predictor = spec->predictor == ARFIMA_PREDICT_LS
                       ? arfima::PredictorKind::kLs
                       : arfima::PredictorKind::kCss;
    es.threads = spec->threads;
    es.css_config = to_config(options);
    const arfima::MspeEstimate est = arfima::empirical_second_order_mspe(es);
    out->estimate = est.empirical_second_order;
    out->std_error = est.std_error;
    out->replications_used = est.replications_used;
    out->failures = est.failures;
    out->quality_warning = est.quality_warning ? 1 : 0;
    return ARFIMA_OK;
  });
}

arfima_status arfima_mc_table1(size_t n, size_t replications,
                               uint64_t base_seed, size_t threads,
                               const arfima_css_options* options,
                               arfima_table1_row* rows) {
  if (auto s = require(rows != nullptr, "rows must not be NULL")) return s;
  return guarded([&] {
    const auto result =
        arfima::run_table1(n, replications, base_seed, threads, to_config(options));
    if (result.size() != ARFIMA_TABLE1_ROWS)
      throw std::runtime_error("unexpected benchmark row count");
    for (size_t i = 0; i < result.size(); ++i) {
      const auto& r = result[i];
      std::snprintf(rows[i].model_id, sizeof(rows[i].model_id), "%s",
                    r.model_id.c_str());
      std::snprintf(rows[i].method, sizeof(rows[i].method), "%s",
                    r.method.c_str());
      rows[i].n = r.n;
      rows[i].h = r.h;
      rows[i].reps = r.reps;
      rows[i].estimate = r.estimate;
      rows[i].std_error = r.std_error;
      rows[i].theory_value = r.theory_value;
    }
    return ARFIMA_OK;
  });
}

}  // extern "C"
