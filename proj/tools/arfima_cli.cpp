// Command-line front end; all numerics go through the C API in arfima.h.
//
// Exit codes: 0 success, 1 usage error, 2 data/convergence error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arfima/arfima.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct ExitData {
  std::string message;
};

// Throws ExitData (-> exit 2) when an API call fails.
void check(arfima_status status) {
  if (status != ARFIMA_OK) throw ExitData{arfima_last_error()};
}

using ModelPtr = std::unique_ptr<arfima_model, decltype(&arfima_model_free)>;

struct ModelFlags {
  std::vector<double> alpha;
  std::vector<double> beta;
  double d = 0.0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m) {
  cmd->add_option("--alpha", m.alpha,
                  "AR coefficients alpha_1..alpha_p1 of 1 - sum alpha_j B^j");
  cmd->add_option("--beta", m.beta,
                  "MA coefficients beta_1..beta_p2 of 1 - sum beta_j B^j");
  cmd->add_option("--d", m.d, "memory parameter of (1-B)^d")
      ->capture_default_str();
}

ModelPtr make_model(const ModelFlags& m) {
  arfima_model* raw = nullptr;
  check(arfima_model_create(m.alpha.data(), m.alpha.size(), m.beta.data(),
                            m.beta.size(), m.d, &raw));
  return ModelPtr(raw, &arfima_model_free);
}

struct SpaceFlags {
  std::size_t p1 = 0;
  std::size_t p2 = 0;
  double d_lo = -1.0;
  double d_hi = 3.0;
  double theta_bound = 2.0;
};

void add_space_flags(CLI::App* cmd, SpaceFlags& s) {
  cmd->add_option("--p1", s.p1, "AR order of the fitted model")
      ->capture_default_str();
  cmd->add_option("--p2", s.p2, "MA order of the fitted model")
      ->capture_default_str();
  cmd->add_option("--d-lo", s.d_lo, "lower bound of the d box")
      ->capture_default_str();
  cmd->add_option("--d-hi", s.d_hi, "upper bound of the d box")
      ->capture_default_str();
  cmd->add_option("--theta-bound", s.theta_bound,
                  "AR/MA coefficient box half-width")
      ->capture_default_str();
}

struct OptFlags {
  arfima_css_options options;
};

void add_optimizer_flags(CLI::App* cmd, OptFlags& o) {
  arfima_css_options_init(&o.options);
  cmd->add_option("--starts-d", o.options.starts_d,
                  "number of coarse d grid starts")
      ->capture_default_str();
  cmd->add_option("--local-starts", o.options.local_starts,
                  "starts refined by the local optimizer")
      ->capture_default_str();
  cmd->add_option("--max-iter", o.options.max_iter,
                  "iteration cap per optimizer start")
      ->capture_default_str();
  cmd->add_option("--grad-tol", o.options.grad_tol,
                  "projected-gradient convergence tolerance")
      ->capture_default_str();
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw ExitData{"cannot open output file '" + path + "'"};
  return file;
}

std::vector<double> read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ExitData{"cannot open input file '" + path + "'"};
  std::string line;
  if (!std::getline(in, line) || line != "y")
    throw ExitData{"input must be a single-column CSV with header 'y'"};
  std::vector<double> y;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &pos);
    } catch (const std::exception&) {
      throw ExitData{"malformed value '" + line + "' in '" + path + "'"};
    }
    if (pos != line.size())
      throw ExitData{"malformed value '" + line + "' in '" + path + "'"};
    y.push_back(v);
  }
  return y;
}

void write_column(std::ostream& os, const char* header,
                  const std::vector<double>& values) {
  os << header << '\n' << std::setprecision(17);
  for (double v : values) os << v << '\n';
}

arfima_innovation parse_innovation(const std::string& name) {
  if (name == "gaussian") return ARFIMA_INNOVATION_GAUSSIAN;
  if (name == "uniform") return ARFIMA_INNOVATION_UNIFORM;
  throw CLI::ValidationError("--innovation", "must be 'gaussian' or 'uniform'");
}

void print_fit(std::ostream& os, const arfima_model* model,
               const arfima_fit_info& info) {
  std::size_t p1 = 0, p2 = 0;
  check(arfima_model_order(model, &p1, &p2));
  std::vector<double> alpha(p1), beta(p2);
  double d = 0.0;
  check(arfima_model_params(model, alpha.data(), beta.data(), &d));
  os << std::setprecision(17);
  for (std::size_t j = 0; j < p1; ++j)
    os << "alpha_" << (j + 1) << '=' << alpha[j] << '\n';
  for (std::size_t j = 0; j < p2; ++j)
    os << "beta_" << (j + 1) << '=' << beta[j] << '\n';
  os << "d=" << d << '\n'
     << "sigma2=" << info.sigma2 << '\n'
     << "objective=" << info.objective << '\n'
     << "converged=" << info.converged << '\n'
     << "boundary=" << info.boundary << '\n';
}

void write_manifest(const std::string& csv_path, std::uint64_t seed,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
  if (csv_path.empty()) return;
  const std::string path = csv_path + ".manifest";
  std::ofstream out(path);
  if (!out) throw ExitData{"cannot open manifest file '" + path + "'"};
  out << "tool=arfima\nversion=1.0.0\nseed=" << seed << '\n';
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ARFIMA simulation, CSS estimation, prediction, and second-order MSPE "
      "asymptotics",
      "arfima"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file; command-line flags win on conflict");

  // ---- simulate ----------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "simulate an ARFIMA path as CSV");
  ModelFlags sim_model;
  add_model_flags(sim, sim_model);
  double sim_sigma = 1.0;
  std::size_t sim_n = 1000;
  std::uint64_t sim_seed = 1;
  std::string sim_innovation = "gaussian";
  std::string sim_out, sim_eps_out;
  sim->add_option("--sigma", sim_sigma, "innovation standard deviation")
      ->capture_default_str();
  sim->add_option("--n", sim_n, "path length")->capture_default_str();
  sim->add_option("--seed", sim_seed, "RNG seed (env: ARFIMA_SEED)")
      ->envname("ARFIMA_SEED")
      ->capture_default_str();
  sim->add_option("--innovation", sim_innovation, "gaussian or uniform")
      ->capture_default_str();
  sim->add_option("-o,--output", sim_out, "output CSV path (default stdout)");
  sim->add_option("--eps-output", sim_eps_out,
                  "optional CSV path for the innovations");

  // ---- estimate ----------------------------------------------------------
  auto* est = app.add_subcommand("estimate", "fit by CSS on an input CSV");
  SpaceFlags est_space;
  add_space_flags(est, est_space);
  OptFlags est_opts;
  add_optimizer_flags(est, est_opts);
  std::string est_in;
  est->add_option("-i,--input", est_in, "input CSV (single column, header 'y')")
      ->required();

  // ---- predict -----------------------------------------------------------
  auto* pre = app.add_subcommand("predict",
                                 "forecast h steps ahead from an input CSV");
  pre->set_help_flag("--help", "print this help message and exit");
  ModelFlags pre_model;
  add_model_flags(pre, pre_model);
  SpaceFlags pre_space;
  add_space_flags(pre, pre_space);
  OptFlags pre_opts;
  add_optimizer_flags(pre, pre_opts);
  std::string pre_in, pre_out;
  std::size_t pre_h = 1;
  std::string pre_method = "recursive";
  bool pre_fit = false;
  std::size_t pre_ls_p1 = 3;
  pre->add_option("-i,--input", pre_in, "input CSV (single column, header 'y')")
      ->required();
  pre->add_option("--h", pre_h, "forecast horizon")->capture_default_str();
  pre->add_option("--method", pre_method,
                  "recursive, closed-form, or ls")
      ->capture_default_str();
  pre->add_flag("--fit", pre_fit,
                "fit by CSS first instead of using --alpha/--beta/--d");
  pre->add_option("--ls-p1", pre_ls_p1, "AR order of the ls method")
      ->capture_default_str();
  pre->add_option("-o,--output", pre_out, "output CSV path (default stdout)");

  // ---- mspe-theory -------------------------------------------------------
  auto* thy = app.add_subcommand(
      "mspe-theory", "asymptotic second-order MSPE decomposition as CSV");
  ModelFlags thy_model;
  add_model_flags(thy, thy_model);
  double thy_sigma2 = 1.0;
  std::size_t thy_hmax = 1, thy_trunc = 0;
  std::string thy_out;
  thy->add_option("--sigma2", thy_sigma2, "innovation variance")
      ->capture_default_str();
  thy->add_option("--h-max", thy_hmax, "print rows for h = 1..h-max")
      ->capture_default_str();
  thy->add_option("--truncation", thy_trunc,
                  "series truncation length (0 = default 100000)")
      ->capture_default_str();
  thy->add_option("-o,--output", thy_out, "output CSV path (default stdout)");

  // ---- mc ----------------------------------------------------------------
  auto* mc = app.add_subcommand("mc", "Monte Carlo experiment harness");
  mc->require_subcommand(1);

  auto* t1 = mc->add_subcommand(
      "table1", "one-step benchmark over the three integrated-AR processes");
  std::size_t t1_n = 1000, t1_reps = 2000, t1_threads = 0;
  std::uint64_t t1_seed = 1;
  OptFlags t1_opts;
  add_optimizer_flags(t1, t1_opts);
  std::string t1_out;
  t1->add_option("--n", t1_n, "sample size")->capture_default_str();
  t1->add_option("--reps", t1_reps, "replications per cell")
      ->capture_default_str();
  t1->add_option("--seed", t1_seed, "base RNG seed (env: ARFIMA_SEED)")
      ->envname("ARFIMA_SEED")
      ->capture_default_str();
  t1->add_option("--threads", t1_threads,
                 "worker cap, 0 = hardware concurrency (env: ARFIMA_THREADS)")
      ->envname("ARFIMA_THREADS")
      ->capture_default_str();
  t1->add_option("-o,--output", t1_out, "output CSV path (default stdout)");

  auto* cu = mc->add_subcommand("custom", "single experiment cell");
  cu->set_help_flag("--help", "print this help message and exit");
  ModelFlags cu_model;
  add_model_flags(cu, cu_model);
  SpaceFlags cu_space;
  cu_space.p1 = 3;
  add_space_flags(cu, cu_space);
  OptFlags cu_opts;
  add_optimizer_flags(cu, cu_opts);
  double cu_sigma = 1.0;
  std::string cu_innovation = "gaussian";
  std::string cu_predictor = "css";
  std::size_t cu_ls_p1 = 3, cu_n = 1000, cu_h = 1, cu_reps = 2000,
              cu_threads = 0;
  std::uint64_t cu_seed = 1;
  std::string cu_out;
  cu->add_option("--sigma", cu_sigma, "innovation standard deviation")
      ->capture_default_str();
  cu->add_option("--innovation", cu_innovation, "gaussian or uniform")
      ->capture_default_str();
  cu->add_option("--predictor", cu_predictor, "css or ls")
      ->capture_default_str();
  cu->add_option("--ls-p1", cu_ls_p1, "AR order of the ls predictor")
      ->capture_default_str();
  cu->add_option("--n", cu_n, "sample size")->capture_default_str();
  cu->add_option("--h", cu_h, "forecast horizon")->capture_default_str();
  cu->add_option("--reps", cu_reps, "replications")->capture_default_str();
  cu->add_option("--seed", cu_seed, "base RNG seed (env: ARFIMA_SEED)")
      ->envname("ARFIMA_SEED")
      ->capture_default_str();
  cu->add_option("--threads", cu_threads,
                 "worker cap, 0 = hardware concurrency (env: ARFIMA_THREADS)")
      ->envname("ARFIMA_THREADS")
      ->capture_default_str();
  cu->add_option("-o,--output", cu_out, "output CSV path (default stdout)");

  // let app-level flags such as --config appear after a subcommand name
  for (CLI::App* s : {sim, est, pre, thy, mc, t1, cu}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) {
      const ModelPtr model = make_model(sim_model);
      std::vector<double> y(sim_n), eps(sim_n);
      check(arfima_simulate(model.get(), sim_sigma, sim_n, sim_seed,
                            parse_innovation(sim_innovation), y.data(),
                            eps.data()));
      std::ofstream file;
      write_column(open_output(file, sim_out), "y", y);
      if (!sim_eps_out.empty()) {
        std::ofstream eps_file;
        write_column(open_output(eps_file, sim_eps_out), "eps", eps);
      }
    } else if (est->parsed()) {
      const std::vector<double> y = read_series(est_in);
      arfima_model* raw = nullptr;
      arfima_fit_info info{};
      check(arfima_estimate(y.data(), y.size(), est_space.p1, est_space.p2,
                            est_space.d_lo, est_space.d_hi,
                            est_space.theta_bound, &est_opts.options, &raw,
                            &info));
      const ModelPtr fitted(raw, &arfima_model_free);
      print_fit(std::cout, fitted.get(), info);
    } else if (pre->parsed()) {
      const std::vector<double> y = read_series(pre_in);
      arfima_predictor kind;
      if (pre_method == "recursive")
        kind = ARFIMA_PREDICT_RECURSIVE;
      else if (pre_method == "closed-form")
        kind = ARFIMA_PREDICT_CLOSED_FORM;
      else if (pre_method == "ls")
        kind = ARFIMA_PREDICT_LS;
      else
        throw CLI::ValidationError("--method",
                                   "must be recursive, closed-form, or ls");
      ModelPtr model(nullptr, &arfima_model_free);
      if (kind == ARFIMA_PREDICT_LS) {
        // the ls route only consults the AR order; build a feasible
        // placeholder of that order
        ModelFlags ls_flags;
        ls_flags.alpha.assign(pre_ls_p1, 0.0);
        if (pre_ls_p1 > 0) ls_flags.alpha.back() = 0.5;
        model = make_model(ls_flags);
      } else if (pre_fit) {
        arfima_model* raw = nullptr;
        check(arfima_estimate(y.data(), y.size(), pre_space.p1, pre_space.p2,
                              pre_space.d_lo, pre_space.d_hi,
                              pre_space.theta_bound, &pre_opts.options, &raw,
                              nullptr));
        model = ModelPtr(raw, &arfima_model_free);
      } else {
        model = make_model(pre_model);
      }
      std::vector<double> point(pre_h);
      check(arfima_predict(model.get(), y.data(), y.size(), pre_h, kind, 1.0,
                           point.data(), nullptr));
      const char* method_name = kind == ARFIMA_PREDICT_RECURSIVE
                                    ? "css_recursive"
                                    : kind == ARFIMA_PREDICT_CLOSED_FORM
                                          ? "css_closed_form"
                                          : "ls";
      std::ofstream file;
      std::ostream& os = open_output(file, pre_out);
      os << "horizon,point,method\n" << std::setprecision(17);
      for (std::size_t l = 0; l < pre_h; ++l)
        os << (l + 1) << ',' << point[l] << ',' << method_name << '\n';
    } else if (thy->parsed()) {
      const ModelPtr model = make_model(thy_model);
      std::ofstream file;
      std::ostream& os = open_output(file, thy_out);
      os << "h,sigma2_h,f,g,j,total_second_order\n" << std::setprecision(17);
      for (std::size_t h = 1; h <= thy_hmax; ++h) {
        arfima_mspe_theory row{};
        check(arfima_mspe_theory_eval(model.get(), thy_sigma2, h, thy_trunc,
                                      &row));
        os << h << ',' << row.sigma2_h << ',' << row.f << ',' << row.g << ','
           << row.j << ',' << row.total << '\n';
        if (row.truncation_warning)
          std::cerr << "warning: series tail not negligible at the chosen "
                       "truncation (h="
                    << h << ")\n";
      }
    } else if (t1->parsed()) {
      std::vector<arfima_table1_row> rows(ARFIMA_TABLE1_ROWS);
      check(arfima_mc_table1(t1_n, t1_reps, t1_seed, t1_threads,
                             &t1_opts.options, rows.data()));
      std::ofstream file;
      std::ostream& os = open_output(file, t1_out);
      os << "model_id,method,n,h,reps,estimate,std_error,theory_value\n"
         << std::setprecision(17);
      for (const auto& r : rows)
        os << r.model_id << ',' << r.method << ',' << r.n << ',' << r.h << ','
           << r.reps << ',' << r.estimate << ',' << r.std_error << ','
           << r.theory_value << '\n';
      write_manifest(t1_out, t1_seed,
                     {{"subcommand", "mc table1"},
                      {"n", std::to_string(t1_n)},
                      {"reps", std::to_string(t1_reps)},
                      {"threads", std::to_string(t1_threads)},
                      {"starts_d", std::to_string(t1_opts.options.starts_d)},
                      {"max_iter", std::to_string(t1_opts.options.max_iter)}});
    } else if (cu->parsed()) {
      const ModelPtr model = make_model(cu_model);
      arfima_mc_spec spec;
      arfima_mc_spec_init(&spec);
      spec.model = model.get();
      spec.sigma = cu_sigma;
      spec.innovation = parse_innovation(cu_innovation);
      spec.fit_p1 = cu_space.p1;
      spec.fit_p2 = cu_space.p2;
      spec.fit_d_lo = cu_space.d_lo;
      spec.fit_d_hi = cu_space.d_hi;
      spec.fit_theta_bound = cu_space.theta_bound;
      spec.ls_p1 = cu_ls_p1;
      spec.n = cu_n;
      spec.h = cu_h;
      spec.replications = cu_reps;
      spec.base_seed = cu_seed;
      spec.threads = cu_threads;
      if (cu_predictor == "css")
        spec.predictor = ARFIMA_PREDICT_RECURSIVE;
      else if (cu_predictor == "ls")
        spec.predictor = ARFIMA_PREDICT_LS;
      else
        throw CLI::ValidationError("--predictor", "must be css or ls");
      arfima_mc_result result{};
      check(arfima_mc_mspe(&spec, &cu_opts.options, &result));
      double theory = std::numeric_limits<double>::quiet_NaN();
      if (spec.predictor != ARFIMA_PREDICT_LS) {
        arfima_mspe_theory t{};
        if (arfima_mspe_theory_eval(model.get(), cu_sigma * cu_sigma, cu_h, 0,
                                    &t) == ARFIMA_OK)
          theory = t.total;
      }
      std::ostringstream id;
      id << "arfima(" << cu_model.alpha.size() << ',' << cu_model.d << ','
         << cu_model.beta.size() << ')';
      std::ofstream file;
      std::ostream& os = open_output(file, cu_out);
      os << "model_id,method,n,h,reps,estimate,std_error,theory_value\n"
         << std::setprecision(17);
      os << id.str() << ',' << cu_predictor << ',' << cu_n << ',' << cu_h
         << ',' << cu_reps << ',' << result.estimate << ',' << result.std_error
         << ',' << theory << '\n';
      if (result.quality_warning)
        std::cerr << "warning: " << result.failures << " of " << cu_reps
                  << " replications failed\n";
      write_manifest(cu_out, cu_seed,
                     {{"subcommand", "mc custom"},
                      {"model", id.str()},
                      {"predictor", cu_predictor},
                      {"n", std::to_string(cu_n)},
                      {"h", std::to_string(cu_h)},
                      {"reps", std::to_string(cu_reps)},
                      {"threads", std::to_string(cu_threads)}});
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ExitData& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
