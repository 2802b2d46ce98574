#pragma once

#include <functional>
#include <memory>
#include <string>

#include "nlsplit/linalg.hpp"
#include "nlsplit/optim.hpp"
#include "nlsplit/trace.hpp"

namespace nlsplit::adjoint {

/// Counters shared between a problem's inner machinery and the drivers.
/// `forward` counts constraint-side solver applications (for transport, one
/// angular sweep each); `adjoint_side` tracks adjoint-solve work separately
/// since it is shared identically across methods and excluded from the
/// efficiency comparisons.
struct SolveCounters {
  long forward = 0;
  long adjoint_side = 0;
};

/// Equality-constrained problem in fixed-point form: one iteration of the
/// constraint solver is G(x; theta); the constraint is F = G - id.
struct ConstrainedProblem {
  int state_dim = 0;
  int param_dim = 0;

  std::function<Vec(const Vec&, const Vec&)> solver_iteration;         // G(x; theta)
  std::function<double(const Vec&, const Vec&)> objective;             // J(x; theta)
  std::function<Vec(const Vec&, const Vec&)> dJ_dx;
  std::function<Vec(const Vec&, const Vec&)> dJ_dtheta;
  /// lambda solving the problem's adjoint system with right-hand side rhs
  /// (drivers pass rhs = -dJ/dx).
  std::function<Vec(const Vec&, const Vec&, const Vec&)> adjoint_solve;
  /// <lambda, dF/dtheta> pairing in the problem's gradient convention.
  std::function<Vec(const Vec&, const Vec&, const Vec&)> pair_dF_dtheta;

  /// Norm used for the constraint residual ||delta x||; Euclidean if empty.
  std::function<double(const Vec&)> state_norm;

  std::shared_ptr<SolveCounters> counters;

  double norm_state(const Vec& v) const {
    return state_norm ? state_norm(v) : linalg::norm2(v);
  }
};

struct AdjGradResult {
  Vec x_next;
  Vec theta_next;
  Vec scaled_gradient;  // gamma * split adjoint gradient
};

struct ConstrainedConfig {
  double eta = 1e-10;  // acceptable objective
  double eps = 1e-6;   // acceptable constraint residual ||delta x||
  optim::StepsizeSchedule gamma = optim::constant_stepsize(1.0);
  double mu = 0.9;
  int aa_depth = 25;
  long max_iters = 1000;
  double inner_tol = 1e-6;  // baselines: constraint solve tolerance
  long inner_cap = 100000;
  bool paper_literal_sign = false;
  double divergence_cap = 1e12;
};

struct ConstrainedResult {
  Vec x;
  Vec theta;
  Trace trace;
};

/// One split-adjoint gradient evaluation: advance the state by one solver
/// iteration, solve the adjoint at the new state, assemble the gradient,
/// and take the parameter step.
AdjGradResult ns_adj_gradient(const ConstrainedProblem& p, const Vec& x, const Vec& theta,
                              double gamma);

ConstrainedResult ns_adj_gd(const ConstrainedProblem& p, const Vec& x0, const Vec& theta0,
                            const ConstrainedConfig& cfg);

ConstrainedResult ns_adj_nag(const ConstrainedProblem& p, const Vec& x0, const Vec& theta0,
                             const ConstrainedConfig& cfg);

ConstrainedResult ns_adj_aa(const ConstrainedProblem& p, const Vec& x0, const Vec& theta0,
                            const ConstrainedConfig& cfg);

enum class BaselineVariant { Gd, Nag, Aa };

/// Standard counterparts: the constraint is iterated to cfg.inner_tol at
/// every outer iteration (every inner iteration is counted), followed by a
/// classical adjoint gradient step.
ConstrainedResult adj_baseline(const ConstrainedProblem& p, BaselineVariant variant,
                               const Vec& x0, const Vec& theta0, const ConstrainedConfig& cfg);

/// Classical adjoint gradient at the given (assumed constraint-consistent)
/// state: dJ/dtheta + <lambda, dF/dtheta> with the adjoint solved at (x, theta).
Vec classical_gradient(const ConstrainedProblem& p, const Vec& x, const Vec& theta);

}  // namespace nlsplit::adjoint
