#include "nlsplit/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlsplit/anderson.hpp"

namespace nlsplit::adjoint {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

long forward_count(const ConstrainedProblem& p) {
  return p.counters ? p.counters->forward : 0;
}

struct LoopState {
  Trace trace;
  double delta_norm = kInf;
  double grad_norm = kNan;
  double step_norm = 0.0;
  long cum_at_last_record = 0;
};

/// Record the current point; returns true when the driver should stop.
bool record_and_check(LoopState& ls, const ConstrainedProblem& p, const Vec& x,
                      const Vec& theta, long iter, const ConstrainedConfig& cfg) {
  const double J = p.objective(x, theta);
  IterationRecord rec;
  rec.iter = static_cast<int>(iter);
  rec.cost = J;
  rec.grad_norm = ls.grad_norm;
  rec.step_norm = ls.step_norm;
  rec.constraint_residual = ls.delta_norm;
  const long cum = forward_count(p);
  rec.inner_solves = cum - ls.cum_at_last_record;
  rec.cumulative_inner_solves = cum;
  ls.cum_at_last_record = cum;
  ls.trace.records.push_back(rec);

  if (!std::isfinite(J) || !linalg::all_finite(theta) || !linalg::all_finite(x)) {
    ls.trace.status = RunStatus::Diverged;
    ls.trace.note = "non-finite iterate";
    return true;
  }
  if (J > cfg.divergence_cap) {
    ls.trace.status = RunStatus::Diverged;
    ls.trace.note = "objective above divergence cap";
    return true;
  }
  if (J <= cfg.eta && ls.delta_norm <= cfg.eps) {
    ls.trace.status = RunStatus::Converged;
    return true;
  }
  if (iter >= cfg.max_iters) {
    ls.trace.status = RunStatus::MaxIters;
    return true;
  }
  return false;
}

}  // namespace

AdjGradResult ns_adj_gradient(const ConstrainedProblem& p, const Vec& x, const Vec& theta,
                              double gamma) {
  AdjGradResult out;
  out.x_next = p.solver_iteration(x, theta);
  if (!linalg::all_finite(out.x_next)) throw NonFiniteIterate("solver iteration produced non-finite state");

  Vec rhs = p.dJ_dx(out.x_next, theta);
  for (double& v : rhs) v = -v;
  const Vec lambda = p.adjoint_solve(out.x_next, theta, rhs);

  Vec grad = p.pair_dF_dtheta(lambda, out.x_next, theta);
  const Vec expl = p.dJ_dtheta(out.x_next, theta);
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += expl[i];

  out.scaled_gradient = linalg::scale(gamma, grad);
  out.theta_next = linalg::sub(theta, out.scaled_gradient);
  if (!linalg::all_finite(out.theta_next)) throw NonFiniteIterate("parameter update non-finite");
  return out;
}

Vec classical_gradient(const ConstrainedProblem& p, const Vec& x, const Vec& theta) {
  Vec rhs = p.dJ_dx(x, theta);
  for (double& v : rhs) v = -v;
  const Vec lambda = p.adjoint_solve(x, theta, rhs);
  Vec grad = p.pair_dF_dtheta(lambda, x, theta);
  const Vec expl = p.dJ_dtheta(x, theta);
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += expl[i];
  return grad;
}

ConstrainedResult ns_adj_gd(const ConstrainedProblem& p, const Vec& x0, const Vec& theta0,
                            const ConstrainedConfig& cfg) {
  ConstrainedResult out;
  LoopState ls;
  Vec x(x0), theta(theta0);
  for (long k = 0;; ++k) {
    if (record_and_check(ls, p, x, theta, k, cfg)) break;
    try {
      const double gamma = cfg.gamma(static_cast<int>(k));
      AdjGradResult r = ns_adj_gradient(p, x, theta, gamma);
      ls.delta_norm = p.norm_state(linalg::sub(x, r.x_next));
      ls.grad_norm = linalg::norm2(r.scaled_gradient) / gamma;
      ls.step_norm = linalg::norm2(linalg::sub(r.theta_next, theta));
      x = std::move(r.x_next);
      theta = std::move(r.theta_next);
    } catch (const Error& e) {
      ls.trace.status = RunStatus::Diverged;
      ls.trace.note = e.what();
      break;
    }
  }
  out.x = std::move(x);
  out.theta = std::move(theta);
  out.trace = std::move(ls.trace);
  return out;
}

ConstrainedResult ns_adj_nag(const ConstrainedProblem& p, const Vec& x0, const Vec& theta0,
                             const ConstrainedConfig& cfg) {
  ConstrainedResult out;
  LoopState ls;
  Vec x(x0), theta(theta0);
  Vec v_prev(theta0.size(), 0.0);
  for (long k = 0;; ++k) {
    if (record_and_check(ls, p, x, theta, k, cfg)) break;
    try {
      const double gamma = cfg.gamma(static_cast<int>(k));
      // Look-ahead in the descent-step convention: theta - mu * v_prev.
      const Vec theta_look = linalg::axpy(-cfg.mu, v_prev, theta);
      AdjGradResult r = ns_adj_gradient(p, x, theta_look, gamma);
      ls.delta_norm = p.norm_state(linalg::sub(x, r.x_next));
      ls.grad_norm = linalg::norm2(r.scaled_gradient) / gamma;
      for (std::size_t i = 0; i < v_prev.size(); ++i)
        v_prev[i] = cfg.mu * v_prev[i] + r.scaled_gradient[i];
      const Vec theta_new = linalg::sub(theta, v_prev);
      ls.step_norm = linalg::norm2(linalg::sub(theta_new, theta));
      theta = theta_new;
      x = std::move(r.x_next);
      if (!linalg::all_finite(theta)) throw NonFiniteIterate("parameter update non-finite");
    } catch (const Error& e) {
      ls.trace.status = RunStatus::Diverged;
      ls.trace.note = e.what();
      break;
    }
  }
  out.x = std::move(x);
  out.theta = std::move(theta);
  out.trace = std::move(ls.trace);
  return out;
}

namespace {

/// Shared AA outer loop; `grad_step` must return [x_next, theta_next, gamma*grad]
/// for the given (x, theta) using the loop's fixed gamma.
ConstrainedResult aa_loop(const ConstrainedProblem& p, const Vec& x0, const Vec& theta0,
                          const ConstrainedConfig& cfg,
                          const std::function<AdjGradResult(const Vec&, const Vec&)>& grad_step) {
  ConstrainedResult out;
  LoopState ls;
  Vec x(x0), theta(theta0);
  anderson::AndersonWindow win = anderson::make_window(cfg.aa_depth, p.param_dim);

  double best_res = kInf;
  int since_improvement = 0;

  try {
    if (record_and_check(ls, p, x, theta, 0, cfg)) {
      out.x = std::move(x);
      out.theta = std::move(theta);
      out.trace = std::move(ls.trace);
      return out;
    }
    // Bootstrap: two plain split-adjoint steps seed the difference window.
    AdjGradResult r0 = grad_step(x, theta);
    Vec g_prev = linalg::scale(-1.0, r0.scaled_gradient);
    ls.delta_norm = p.norm_state(linalg::sub(x, r0.x_next));
    ls.grad_norm = linalg::norm2(r0.scaled_gradient);
    ls.step_norm = linalg::norm2(linalg::sub(r0.theta_next, theta));
    const Vec theta_prev = theta;
    x = r0.x_next;
    theta = r0.theta_next;
    if (record_and_check(ls, p, x, theta, 1, cfg)) {
      out.x = std::move(x);
      out.theta = std::move(theta);
      out.trace = std::move(ls.trace);
      return out;
    }
    AdjGradResult r1 = grad_step(x, theta);
    Vec g = linalg::scale(-1.0, r1.scaled_gradient);
    win = anderson::aa_push(std::move(win), theta_prev, theta, g_prev, g);
    best_res = linalg::norm2(g);

    for (long k = 2;; ++k) {
      Vec theta_next;
      try {
        theta_next = anderson::aa_propose(win, theta, g, cfg.paper_literal_sign);
      } catch (const DegenerateWindow&) {
        anderson::clear(win);
        theta_next = linalg::add(theta, g);
      }
      if (!linalg::all_finite(theta_next)) throw NonFiniteIterate("Anderson proposal non-finite");

      AdjGradResult r = grad_step(x, theta_next);
      Vec g_next = linalg::scale(-1.0, r.scaled_gradient);
      ls.delta_norm = p.norm_state(linalg::sub(x, r.x_next));
      ls.grad_norm = linalg::norm2(g_next);
      ls.step_norm = linalg::norm2(linalg::sub(theta_next, theta));
      win = anderson::aa_push(std::move(win), theta, theta_next, g, g_next);

      // Stagnation safeguard: reset to plain steps when the residual has not
      // decreased for 2m consecutive iterations.
      const double res = linalg::norm2(g_next);
      if (res < best_res) {
        best_res = res;
        since_improvement = 0;
      } else if (++since_improvement >= 2 * std::max(1, cfg.aa_depth)) {
        anderson::clear(win);
        since_improvement = 0;
      }

      x = std::move(r.x_next);
      theta = std::move(theta_next);
      g = std::move(g_next);
      if (record_and_check(ls, p, x, theta, k, cfg)) break;
    }
  } catch (const Error& e) {
    ls.trace.status = RunStatus::Diverged;
    ls.trace.note = e.what();
  }
  out.x = std::move(x);
  out.theta = std::move(theta);
  out.trace = std::move(ls.trace);
  return out;
}

Vec converge_constraint(const ConstrainedProblem& p, Vec x, const Vec& theta,
                        const ConstrainedConfig& cfg, double* final_residual) {
  long n = 0;
  double r = kInf;
  do {
    Vec xn = p.solver_iteration(x, theta);
    if (!linalg::all_finite(xn)) throw NonFiniteIterate("constraint solve diverged");
    r = p.norm_state(linalg::sub(xn, x));
    x = std::move(xn);
    ++n;
  } while (r > cfg.inner_tol && n < cfg.inner_cap);
  if (r > cfg.inner_tol)
    throw InnerSolveFailure("constraint solve exceeded iteration cap");
  if (final_residual) *final_residual = r;
  return x;
}

}  // namespace

ConstrainedResult ns_adj_aa(const ConstrainedProblem& p, const Vec& x0, const Vec& theta0,
                            const ConstrainedConfig& cfg) {
  const double gamma = cfg.gamma(0);
  return aa_loop(p, x0, theta0, cfg, [&](const Vec& x, const Vec& th) {
    return ns_adj_gradient(p, x, th, gamma);
  });
}

ConstrainedResult adj_baseline(const ConstrainedProblem& p, BaselineVariant variant,
                               const Vec& x0, const Vec& theta0, const ConstrainedConfig& cfg) {
  if (variant == BaselineVariant::Aa) {
    const double gamma = cfg.gamma(0);
    return aa_loop(p, x0, theta0, cfg, [&, gamma](const Vec& x, const Vec& th) {
      AdjGradResult r;
      double resid = kNan;
      r.x_next = converge_constraint(p, x, th, cfg, &resid);
      const Vec grad = classical_gradient(p, r.x_next, th);
      r.scaled_gradient = linalg::scale(gamma, grad);
      r.theta_next = linalg::sub(th, r.scaled_gradient);
      return r;
    });
  }

  ConstrainedResult out;
  LoopState ls;
  Vec x(x0), theta(theta0);
  Vec v_prev(theta0.size(), 0.0);
  const bool nag = variant == BaselineVariant::Nag;

  for (long k = 0;; ++k) {
    if (record_and_check(ls, p, x, theta, k, cfg)) break;
    try {
      const double gamma = cfg.gamma(static_cast<int>(k));
      const Vec theta_eval = nag ? linalg::axpy(-cfg.mu, v_prev, theta) : theta;
      double resid = kNan;
      const Vec x_prev = x;
      x = converge_constraint(p, std::move(x), theta_eval, cfg, &resid);
      const Vec grad = classical_gradient(p, x, theta_eval);
      ls.grad_norm = linalg::norm2(grad);
      ls.delta_norm = resid;
      if (nag) {
        for (std::size_t i = 0; i < v_prev.size(); ++i)
          v_prev[i] = cfg.mu * v_prev[i] + gamma * grad[i];
        const Vec theta_new = linalg::sub(theta, v_prev);
        ls.step_norm = linalg::norm2(linalg::sub(theta_new, theta));
        theta = theta_new;
      } else {
        const Vec theta_new = linalg::axpy(-gamma, grad, theta);
        ls.step_norm = linalg::norm2(linalg::sub(theta_new, theta));
        theta = theta_new;
      }
      if (!linalg::all_finite(theta)) throw NonFiniteIterate("parameter update non-finite");
    } catch (const Error& e) {
      ls.trace.status = RunStatus::Diverged;
      ls.trace.note = e.what();
      break;
    }
  }
  out.x = std::move(x);
  out.theta = std::move(theta);
  out.trace = std::move(ls.trace);
  return out;
}

}  // namespace nlsplit::adjoint
