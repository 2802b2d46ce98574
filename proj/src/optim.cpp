#include "nlsplit/optim.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace nlsplit::optim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require_finite(const Vec& x, const char* what) {
  if (!linalg::all_finite(x)) throw NonFiniteIterate(what);
}

Vec apply_split(const SplitGradientProblem& p, const Vec& first, const Vec& z) {
  return p.split_grad(first, z);
}

/// Solve z + gamma * split_grad(first, z) = base for z.
ImplicitStepResult solve_implicit(const SplitGradientProblem& p, const Vec& first,
                                  const Vec& base, double gamma,
                                  const InnerSolveConfig& inner) {
  ImplicitStepResult out;

  const bool want_direct = inner.mode == InnerSolveConfig::Mode::DirectLinear;
  if (want_direct && !p.li)
    throw InnerSolveFailure("direct-linear inner solve requested but splitting is not linearly implicit");

  if (p.li && (want_direct || inner.mode == InnerSolveConfig::Mode::Newton)) {
    // Exact: z = (I + gamma L(first))^{-1} (base - gamma g(first)).
    const Mat L = p.li->L(first);
    const int n = static_cast<int>(base.size());
    Mat M = Mat::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) += gamma * L(i, j);
    const Vec rhs = linalg::axpy(-gamma, p.li->g(first), base);
    out.x = linalg::lu_solve(M, rhs);
    out.inner_solves = 1;
    require_finite(out.x, "implicit step produced non-finite iterate");
    return out;
  }

  auto residual = [&](const Vec& z) {
    Vec r = linalg::axpy(gamma, apply_split(p, first, z), z);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= base[i];
    return r;
  };
  auto res_scale = [&](const Vec& z) {
    return 1.0 + linalg::norm2(base) + gamma * linalg::norm2(apply_split(p, first, z));
  };

  if (inner.mode == InnerSolveConfig::Mode::FixedPoint) {
    Vec z(base);
    for (int it = 0; it < inner.max_inner; ++it) {
      Vec znew = linalg::axpy(-gamma, apply_split(p, first, z), base);
      require_finite(znew, "fixed-point inner iteration diverged");
      z = znew;
      if (linalg::norm2(residual(z)) <= inner.tol * res_scale(z)) {
        out.x = z;
        return out;
      }
    }
    throw InnerSolveFailure("fixed-point inner solve exhausted max_inner");
  }

  // Damped Newton, warm-started at the Newton(1) point.
  Vec z(base);
  {
    const int n = static_cast<int>(base.size());
    Mat M = Mat::identity(n);
    const Mat D2 = p.d2_split_grad(first, base);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) += gamma * D2(i, j);
    try {
      const Vec delta = linalg::lu_solve(M, linalg::scale(gamma, apply_split(p, first, base)));
      z = linalg::sub(base, delta);
      out.inner_solves += 1;
      if (!linalg::all_finite(z)) z = base;
    } catch (const SingularMatrix&) {
      z = base;
    }
  }

  double rnorm = linalg::norm2(residual(z));
  for (int it = 0; it < inner.max_inner; ++it) {
    if (rnorm <= inner.tol * res_scale(z)) {
      out.x = z;
      require_finite(out.x, "Newton inner solve produced non-finite iterate");
      return out;
    }
    const int n = static_cast<int>(base.size());
    Mat M = Mat::identity(n);
    const Mat D2 = p.d2_split_grad(first, z);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) += gamma * D2(i, j);
    Vec delta;
    try {
      delta = linalg::lu_solve(M, residual(z));
      out.inner_solves += 1;
    } catch (const SingularMatrix&) {
      break;  // fall through to fixed-point
    }
    double step = inner.damping;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      const Vec znew = linalg::axpy(-step, delta, z);
      if (linalg::all_finite(znew)) {
        const double rnew = linalg::norm2(residual(znew));
        if (rnew < rnorm) {
          z = znew;
          rnorm = rnew;
          improved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!improved) break;  // Newton stagnated, try fixed point
  }

  // Fixed-point fallback.
  Vec z2(base);
  for (int it = 0; it < inner.max_inner; ++it) {
    Vec znew = linalg::axpy(-gamma, apply_split(p, first, z2), base);
    if (!linalg::all_finite(znew)) break;
    z2 = znew;
    if (linalg::norm2(residual(z2)) <= inner.tol * res_scale(z2)) {
      out.x = z2;
      return out;
    }
  }
  throw InnerSolveFailure("implicit inner solve failed (Newton and fixed-point)");
}

}  // namespace

StepsizeSchedule constant_stepsize(double gamma) {
  return [gamma](int) { return gamma; };
}

Method method_from_string(const std::string& name) {
  if (name == "gd") return Method::Gd;
  if (name == "nag") return Method::Nag;
  if (name == "nsgd") return Method::NsGd;
  if (name == "nsnag") return Method::NsNag;
  if (name == "nsgd-newton1") return Method::NsGdNewton1;
  if (name == "nsnag-newton1") return Method::NsNagNewton1;
  if (name == "aa-newton1") return Method::AaNewton1;
  if (name == "aa-gd") return Method::AaGd;
  throw ConfigError("method.name: unknown unconstrained method '" + name + "'");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Gd: return "gd";
    case Method::Nag: return "nag";
    case Method::NsGd: return "nsgd";
    case Method::NsNag: return "nsnag";
    case Method::NsGdNewton1: return "nsgd-newton1";
    case Method::NsNagNewton1: return "nsnag-newton1";
    case Method::AaNewton1: return "aa-newton1";
    case Method::AaGd: return "aa-gd";
  }
  return "?";
}

bool method_is_split(Method m) { return m != Method::Gd && m != Method::Nag && m != Method::AaGd; }

Vec gd_step(const SplitGradientProblem& p, const Vec& x, double gamma) {
  Vec xn = linalg::axpy(-gamma, p.grad(x), x);
  require_finite(xn, "gd_step produced non-finite iterate");
  return xn;
}

std::pair<Vec, Vec> nag_step(const SplitGradientProblem& p, const Vec& x, const Vec& v,
                             double gamma, double mu) {
  const Vec look = linalg::axpy(mu, v, x);
  Vec xn = linalg::axpy(-gamma, p.grad(look), look);
  require_finite(xn, "nag_step produced non-finite iterate");
  return {xn, linalg::sub(xn, x)};
}

ImplicitStepResult nsgd_step(const SplitGradientProblem& p, const Vec& x, double gamma,
                             const InnerSolveConfig& inner) {
  return solve_implicit(p, x, x, gamma, inner);
}

ImplicitNagResult nsnag_step(const SplitGradientProblem& p, const Vec& x, const Vec& v,
                             double gamma, double mu, const InnerSolveConfig& inner) {
  const Vec look = linalg::axpy(mu, v, x);
  ImplicitStepResult s = solve_implicit(p, look, look, gamma, inner);
  ImplicitNagResult out;
  out.v = linalg::sub(s.x, x);
  out.x = std::move(s.x);
  out.inner_solves = s.inner_solves;
  return out;
}

Vec nsgd_newton1_step(const SplitGradientProblem& p, const Vec& x, double gamma) {
  const int n = static_cast<int>(x.size());
  Mat M = Mat::identity(n);
  const Mat D2 = p.d2_split_grad(x, x);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) += gamma * D2(i, j);
  const Vec delta = linalg::lu_solve(M, linalg::scale(gamma, p.grad(x)));
  Vec xn = linalg::sub(x, delta);
  require_finite(xn, "nsgd_newton1_step produced non-finite iterate");
  return xn;
}

std::pair<Vec, Vec> nsnag_newton1_step(const SplitGradientProblem& p, const Vec& x,
                                       const Vec& v, double gamma, double mu) {
  const Vec look = linalg::axpy(mu, v, x);
  const Vec xn = nsgd_newton1_step(p, look, gamma);
  return {xn, linalg::sub(xn, x)};
}

namespace {

struct StopCheck {
  bool stop = false;
  RunStatus status = RunStatus::MaxIters;
  std::string note;
};

StopCheck check_stop(const SplitGradientProblem& p, double cost, double gnorm, long iter,
                     const OptimizerConfig& cfg) {
  StopCheck s;
  if (!std::isfinite(gnorm) || (p.cost && !std::isfinite(cost))) {
    s.stop = true;
    s.status = RunStatus::Diverged;
    s.note = "non-finite iterate";
    return s;
  }
  if (p.cost && cost > cfg.divergence_cap) {
    s.stop = true;
    s.status = RunStatus::Diverged;
    s.note = "cost above divergence cap";
    return s;
  }
  if ((p.cost && cost <= cfg.cost_tol) || gnorm <= cfg.grad_tol) {
    s.stop = true;
    s.status = RunStatus::Converged;
    return s;
  }
  if (iter >= cfg.max_iters) {
    s.stop = true;
    s.status = RunStatus::MaxIters;
  }
  return s;
}

}  // namespace

RunResult aa_newton1_run(const SplitGradientProblem& p, const Vec& x0,
                         const OptimizerConfig& cfg) {
  return run_unconstrained(Method::AaNewton1, p, x0, cfg);
}

RunResult run_unconstrained(Method method, const SplitGradientProblem& p, const Vec& x0,
                            const OptimizerConfig& cfg) {
  RunResult out;
  Trace& trace = out.trace;
  Vec x(x0);
  Vec v(x0.size(), 0.0);
  long cum_solves = 0;
  double step_norm = 0.0;
  long last_solves = 0;

  const bool is_aa = method == Method::AaNewton1 || method == Method::AaGd;
  // AA window: iterates, their images under the fixed-point operator, and
  // residuals g = G(x) - x, oldest first.
  std::deque<Vec> win_x, win_gx, win_res;

  auto fixed_point_op = [&](const Vec& xi, int k) {
    const double gamma = cfg.gamma(k);
    if (method == Method::AaGd) return gd_step(p, xi, gamma);
    return nsgd_newton1_step(p, xi, gamma);
  };

  for (long k = 0;; ++k) {
    const double cost = p.cost ? p.cost(x) : kNan;
    const Vec g = p.grad(x);
    const double gnorm = linalg::all_finite(g) ? linalg::norm2(g)
                                               : std::numeric_limits<double>::infinity();

    IterationRecord rec;
    rec.iter = static_cast<int>(k);
    rec.cost = cost;
    rec.grad_norm = gnorm;
    rec.step_norm = step_norm;
    rec.constraint_residual = kNan;
    rec.inner_solves = last_solves;
    rec.cumulative_inner_solves = cum_solves;
    trace.records.push_back(rec);

    const StopCheck s = check_stop(p, cost, gnorm, k, cfg);
    if (s.stop) {
      trace.status = s.status;
      trace.note = s.note;
      break;
    }

    Vec xn;
    last_solves = 0;
    try {
      const double gamma = cfg.gamma(static_cast<int>(k));
      switch (method) {
        case Method::Gd:
          xn = gd_step(p, x, gamma);
          break;
        case Method::Nag: {
          auto [xs, vs] = nag_step(p, x, v, gamma, cfg.mu);
          xn = std::move(xs);
          v = std::move(vs);
          break;
        }
        case Method::NsGd: {
          auto r = nsgd_step(p, x, gamma, cfg.inner);
          xn = std::move(r.x);
          last_solves = r.inner_solves;
          break;
        }
        case Method::NsNag: {
          auto r = nsnag_step(p, x, v, gamma, cfg.mu, cfg.inner);
          xn = std::move(r.x);
          v = std::move(r.v);
          last_solves = r.inner_solves;
          break;
        }
        case Method::NsGdNewton1:
          xn = nsgd_newton1_step(p, x, gamma);
          last_solves = 1;
          break;
        case Method::NsNagNewton1: {
          auto [xs, vs] = nsnag_newton1_step(p, x, v, gamma, cfg.mu);
          xn = std::move(xs);
          v = std::move(vs);
          last_solves = 1;
          break;
        }
        case Method::AaNewton1:
        case Method::AaGd: {
          const Vec gx = fixed_point_op(x, static_cast<int>(k));
          last_solves = method == Method::AaNewton1 ? 1 : 0;
          win_x.push_back(x);
          win_gx.push_back(gx);
          win_res.push_back(linalg::sub(gx, x));
          while (static_cast<int>(win_x.size()) > cfg.aa_depth + 1) {
            win_x.pop_front();
            win_gx.pop_front();
            win_res.pop_front();
          }
          if (k == 0) {
            xn = gx;  // plain first step
            break;
          }
          const int w = static_cast<int>(win_x.size());
          Mat G(static_cast<int>(x.size()), w);
          for (int j = 0; j < w; ++j)
            for (std::size_t i = 0; i < x.size(); ++i)
              G(static_cast<int>(i), j) = win_res[j][i];
          Vec eta;
          try {
            eta = linalg::sum_to_one_least_squares(G);
          } catch (const DegenerateWindow&) {
            // Keep only the newest entry and take a plain step.
            while (win_x.size() > 1) {
              win_x.pop_front();
              win_gx.pop_front();
              win_res.pop_front();
            }
            eta = Vec{1.0};
          }
          xn.assign(x.size(), 0.0);
          for (std::size_t j = 0; j < eta.size(); ++j)
            for (std::size_t i = 0; i < x.size(); ++i) xn[i] += eta[j] * win_gx[j][i];
          require_finite(xn, "Anderson proposal non-finite");
          break;
        }
      }
    } catch (const Error& e) {
      trace.status = RunStatus::Diverged;
      trace.note = e.what();
      break;
    }
    step_norm = linalg::norm2(linalg::sub(xn, x));
    cum_solves += last_solves;
    x = std::move(xn);
  }

  out.x = std::move(x);
  return out;
}

}  // namespace nlsplit::optim
