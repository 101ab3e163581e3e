#include "css.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fracdiff.hpp"

namespace arfima {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  void clamp(Eigen::VectorXd& x) const {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      x(i) = std::min(std::max(x(i), lo(i)), hi(i));
  }
};

Box make_box(const ParamSpace& space) {
  const std::size_t p = space.p1 + space.p2;
  Box b;
  b.lo.resize(static_cast<Eigen::Index>(p + 1));
  b.hi.resize(static_cast<Eigen::Index>(p + 1));
  for (std::size_t i = 0; i < p; ++i) {
    b.lo(static_cast<Eigen::Index>(i)) = space.theta_lo[i];
    b.hi(static_cast<Eigen::Index>(i)) = space.theta_hi[i];
  }
  b.lo(static_cast<Eigen::Index>(p)) = space.d_lo;
  b.hi(static_cast<Eigen::Index>(p)) = space.d_hi;
  return b;
}

class Objective {
 public:
  Objective(std::span<const double> y, const ParamSpace& space)
      : y_(y), space_(space) {}

  double value(const Eigen::VectorXd& eta) const {
    const ArfimaParams p = ArfimaParams::from_vector(eta, space_.p1, space_.p2);
    if (!is_feasible(p, space_)) return kInf;
    return css_objective(y_, p);
  }

  double value_grad(const Eigen::VectorXd& eta, Eigen::VectorXd& grad) const {
    const ArfimaParams p = ArfimaParams::from_vector(eta, space_.p1, space_.p2);
    if (!is_feasible(p, space_)) return kInf;
    return css_objective_gradient(y_, p, grad);
  }

 private:
  std::span<const double> y_;
  const ParamSpace& space_;
};

double projected_grad_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                           const Box& box) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double gi = g(i);
    if (x(i) <= box.lo(i) && gi > 0.0) gi = 0.0;
    if (x(i) >= box.hi(i) && gi < 0.0) gi = 0.0;
    s += gi * gi;
  }
  return std::sqrt(s);
}

struct LocalResult {
  Eigen::VectorXd x;
  double f = kInf;
  bool converged = false;
};

LocalResult bfgs_box(const Objective& obj, const Box& box, Eigen::VectorXd x,
                     const CssConfig& cfg) {
  const Eigen::Index p = x.size();
  LocalResult res;
  Eigen::VectorXd g(p), g_new(p);
  double f = obj.value_grad(x, g);
  if (!std::isfinite(f)) {
    res.x = x;
    return res;
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(p, p);
  for (std::size_t it = 0; it < cfg.max_iter; ++it) {
    if (projected_grad_norm(x, g, box) <= cfg.grad_tol * (1.0 + f)) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -(h * g);
    if (dir.dot(g) >= 0.0) {
      h.setIdentity();
      dir = -g;
    }
    // backtracking line search with box projection
    double step = 1.0;
    double f_new = kInf;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = x + step * dir;
      box.clamp(x_new);
      f_new = obj.value_grad(x_new, g_new);
      const double decrease = 1e-4 * g.dot(x_new - x);
      if (std::isfinite(f_new) && f_new <= f + decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd yv = g_new - g;
    const double sy = s.dot(yv);
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      const Eigen::VectorXd hy = h * yv;
      const double yhy = yv.dot(hy);
      h += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
           (hy * s.transpose() + s * hy.transpose()) / sy;
    } else {
      h.setIdentity();
    }
    x = std::move(x_new);
    g = g_new;
    if (std::abs(f - f_new) <= 1e-14 * (1.0 + std::abs(f))) {
      f = f_new;
      res.converged = projected_grad_norm(x, g, box) <= cfg.grad_tol * (1.0 + f) * 10.0;
      break;
    }
    f = f_new;
  }
  res.x = x;
  res.f = f;
  return res;
}

// Least-squares AR fit of the fractionally differenced series, used only as
// a warm start for theta.
std::vector<double> ls_theta_start(std::span<const double> y, double d,
                                   std::size_t p1) {
  const std::vector<double> v = apply_frac_diff(y, d);
  const std::size_t n = v.size();
  if (p1 == 0 || n < 2 * p1 + 2) return std::vector<double>(p1, 0.0);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p1),
                                               static_cast<Eigen::Index>(p1));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p1));
  for (std::size_t t = p1; t < n; ++t) {
    for (std::size_t i = 0; i < p1; ++i) {
      rhs(static_cast<Eigen::Index>(i)) += v[t - 1 - i] * v[t];
      for (std::size_t j = 0; j < p1; ++j)
        gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            v[t - 1 - i] * v[t - 1 - j];
    }
  }
  gram.diagonal().array() += 1e-8 * (1.0 + gram.trace() / static_cast<double>(p1));
  Eigen::VectorXd a = gram.ldlt().solve(rhs);
  return std::vector<double>(a.data(), a.data() + p1);
}

// Shrinks theta toward zero until the start point is feasible in the space.
bool make_start_feasible(ArfimaParams& p, const ParamSpace& space) {
  // a zero highest-order pair is nudged off the degenerate set
  auto nudge = [&p] {
    if (p.p1() > 0 && p.p2() > 0) {
      if (std::abs(p.alpha.back()) + std::abs(p.beta.back()) == 0.0)
        p.alpha.back() = 1e-4;
    } else if (p.p1() > 0 && p.alpha.back() == 0.0) {
      p.alpha.back() = 1e-4;
    } else if (p.p2() > 0 && p.beta.back() == 0.0) {
      p.beta.back() = 1e-4;
    }
  };
  nudge();
  for (int i = 0; i < 30; ++i) {
    if (is_feasible(p, space)) return true;
    for (auto& a : p.alpha) a *= 0.7;
    for (auto& b : p.beta) b *= 0.7;
    nudge();
  }
  return false;
}

bool better(double f_a, const Eigen::VectorXd& a, double f_b,
            const Eigen::VectorXd& b) {
  if (f_a != f_b) return f_a < f_b;
  const double na = a.norm();
  const double nb = b.norm();
  if (na != nb) return na < nb;
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

}  // namespace

CssFit estimate_css(std::span<const double> y, const ParamSpace& space,
                    const CssConfig& config) {
  space.validate();
  const std::size_t pb = space.p1 + space.p2 + 1;
  if (y.size() < pb + 2)
    throw std::invalid_argument("estimate_css: requires n >= p1+p2+3");
  bool all_zero = true;
  for (double v : y)
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  if (all_zero)
    throw std::domain_error("estimate_css: degenerate data (series identically zero)");

  const Objective obj(y, space);
  const Box box = make_box(space);

  // Coarse starts: a d-grid crossed with a zero theta and an LS-warm theta.
  const std::size_t nd = std::max<std::size_t>(config.starts_d, 1);
  const double span = space.d_hi - space.d_lo;
  std::vector<Eigen::VectorXd> starts;
  for (std::size_t i = 0; i < nd; ++i) {
    const double frac = (nd == 1) ? 0.5
                                  : static_cast<double>(i) / static_cast<double>(nd - 1);
    const double d = space.d_lo + span * (0.001 + 0.998 * frac);
    ArfimaParams zero;
    zero.alpha.assign(space.p1, 0.0);
    zero.beta.assign(space.p2, 0.0);
    zero.d = d;
    if (make_start_feasible(zero, space)) starts.push_back(zero.as_vector());
    if (space.p1 > 0) {
      ArfimaParams warm;
      warm.alpha = ls_theta_start(y, d, space.p1);
      warm.beta.assign(space.p2, 0.0);
      warm.d = d;
      for (std::size_t j = 0; j < space.p1; ++j)
        warm.alpha[j] =
            std::min(std::max(warm.alpha[j], space.theta_lo[j]), space.theta_hi[j]);
      if (make_start_feasible(warm, space)) starts.push_back(warm.as_vector());
    }
  }
  if (starts.empty())
    throw std::domain_error("estimate_css: no feasible start point in the space");

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double f = obj.value(starts[i]);
    if (std::isfinite(f)) ranked.emplace_back(f, i);
  }
  if (ranked.empty())
    throw std::domain_error("estimate_css: no feasible start point in the space");
  std::sort(ranked.begin(), ranked.end());

  const std::size_t nlocal =
      std::min<std::size_t>(std::max<std::size_t>(config.local_starts, 1), ranked.size());
  LocalResult best;
  Eigen::VectorXd best_x;
  bool any = false;
  for (std::size_t i = 0; i < nlocal; ++i) {
    LocalResult r = bfgs_box(obj, box, starts[ranked[i].second], config);
    if (!std::isfinite(r.f)) continue;
    if (!any || better(r.f, r.x, best.f, best.x)) {
      best = r;
      any = true;
    }
  }
  if (!any)
    throw std::domain_error("estimate_css: optimizer failed from every start");

  // the reported objective can never exceed the best evaluated start
  if (best.f > ranked.front().first) {
    best.x = starts[ranked.front().second];
    best.f = ranked.front().first;
    best.converged = false;
  }

  CssFit fit;
  fit.estimate = ArfimaParams::from_vector(best.x, space.p1, space.p2);
  fit.objective_value = best.f;
  fit.sigma2_hat = best.f / static_cast<double>(y.size());
  fit.n_starts = starts.size();
  fit.converged = best.converged;
  fit.boundary_flag = false;
  for (Eigen::Index i = 0; i < best.x.size(); ++i) {
    const double tol = 1e-3 * (box.hi(i) - box.lo(i));
    if (best.x(i) <= box.lo(i) + tol || best.x(i) >= box.hi(i) - tol)
      fit.boundary_flag = true;
  }
  return fit;
}

Eigen::VectorXd scaled_error(const CssFit& fit, const ArfimaParams& truth,
                             std::size_t n) {
  const Eigen::VectorXd e = fit.estimate.as_vector();
  const Eigen::VectorXd t = truth.as_vector();
  if (e.size() != t.size())
    throw std::invalid_argument("scaled_error: dimension mismatch");
  return std::sqrt(static_cast<double>(n)) * (e - t);
}

}  // namespace arfima
