#pragma once

#include <functional>
#include <string>
#include <utility>

#include "nlsplit/linalg.hpp"
#include "nlsplit/splitting.hpp"
#include "nlsplit/trace.hpp"

namespace nlsplit::optim {

using splitting::SplitGradientProblem;

enum class Method {
  Gd,
  Nag,
  NsGd,
  NsNag,
  NsGdNewton1,
  NsNagNewton1,
  AaNewton1,
  AaGd,
};

Method method_from_string(const std::string& name);
std::string to_string(Method m);
bool method_is_split(Method m);  // needs a split gradient (not just grad)

struct InnerSolveConfig {
  enum class Mode { DirectLinear, Newton, FixedPoint };
  Mode mode = Mode::DirectLinear;
  double tol = 1e-10;
  int max_inner = 50;
  double damping = 1.0;  // initial Newton step fraction, halved on increase
};

using StepsizeSchedule = std::function<double(int)>;
StepsizeSchedule constant_stepsize(double gamma);

struct OptimizerConfig {
  StepsizeSchedule gamma = constant_stepsize(0.1);
  double mu = 0.9;
  int aa_depth = 5;
  long max_iters = 1000;
  double cost_tol = 1e-10;
  double grad_tol = 0.0;
  InnerSolveConfig inner;
  double divergence_cap = 1e12;
};

// -- single steps --------------------------------------------------------------

/// x - gamma * grad(x). Throws NonFiniteIterate on NaN/Inf results.
Vec gd_step(const SplitGradientProblem& p, const Vec& x, double gamma);

/// Nesterov step: look-ahead x + mu v, gradient there, velocity = change in x.
std::pair<Vec, Vec> nag_step(const SplitGradientProblem& p, const Vec& x, const Vec& v,
                             double gamma, double mu);

struct ImplicitStepResult {
  Vec x;
  long inner_solves = 0;
};

/// Semi-implicit step: solves z + gamma * split_grad(x, z) = x. Exact via one
/// linear solve when the splitting is linearly implicit; otherwise damped
/// Newton with a fixed-point fallback.
ImplicitStepResult nsgd_step(const SplitGradientProblem& p, const Vec& x, double gamma,
                             const InnerSolveConfig& inner);

struct ImplicitNagResult {
  Vec x;
  Vec v;
  long inner_solves = 0;
};

/// As nsgd_step with the explicit slot frozen at the look-ahead point.
ImplicitNagResult nsnag_step(const SplitGradientProblem& p, const Vec& x, const Vec& v,
                             double gamma, double mu, const InnerSolveConfig& inner);

/// One-Newton linearization of the implicit step:
///   x - gamma (I + gamma D2)^{-1} grad(x), exactly one linear solve.
/// With the residual splitting this is the Levenberg-Marquardt update with
/// damping 1/gamma.
Vec nsgd_newton1_step(const SplitGradientProblem& p, const Vec& x, double gamma);

std::pair<Vec, Vec> nsnag_newton1_step(const SplitGradientProblem& p, const Vec& x,
                                       const Vec& v, double gamma, double mu);

// -- drivers -------------------------------------------------------------------

struct RunResult {
  Vec x;
  Trace trace;
};

/// Anderson acceleration of the Newton(1) fixed-point operator with a
/// sum-to-one least-squares window.
RunResult aa_newton1_run(const SplitGradientProblem& p, const Vec& x0,
                         const OptimizerConfig& cfg);

/// Drive any unconstrained method; stops on cost_tol, grad_tol, max_iters,
/// or divergence (NaN/Inf or cost above the cap). Failures become statuses,
/// never exceptions.
RunResult run_unconstrained(Method method, const SplitGradientProblem& p, const Vec& x0,
                            const OptimizerConfig& cfg);

}  // namespace nlsplit::optim
