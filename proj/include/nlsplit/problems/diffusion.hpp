#pragma once

#include <memory>
#include <vector>

#include "nlsplit/adjoint.hpp"
#include "nlsplit/linalg.hpp"

namespace nlsplit::problems {

/// Backward-Euler diffusion control: steer the terminal state of
/// dx/dt = A x + f toward a target by optimizing the per-step forces,
/// with an alpha-blended splitting of each step's initial condition.
/// Chains are stored flat: states 1..N, each of length n_nodes.
struct DiffusionControl {
  int n_nodes = 50;
  double T = 1.0;
  int n_steps = 100;
  double dt = 0.0;
  double h = 0.0;
  Mat A;  // second-order central-difference Laplacian, zero Dirichlet BCs
  std::shared_ptr<linalg::LuFactor> iadt;  // factor of (I - dt A), reused
  Vec x0;
  Vec x_target;
  double alpha = 0.0;
  int threads = 1;
  std::shared_ptr<adjoint::SolveCounters> counters;

  int chain_dof() const { return n_nodes * n_steps; }
};

struct DiffusionParams {
  int n_nodes = 50;
  double T = 1.0;
  int n_steps = 100;
  double alpha = 0.0;
  int threads = 1;
};

/// Initial condition sin(6 pi x), target sin(2 pi x) on [0,1].
DiffusionControl diffusion_build(const DiffusionParams& params);

/// One splitting iteration of the whole chain:
/// (I - dt A) x_{n+1}^{k+1} = (1-alpha) x_n^{k+1} + alpha x_n^k + dt f_{n+1}.
/// alpha = 0 is the exact sequential solve; alpha = 1 decouples the steps.
Vec diffusion_forward_split(const DiffusionControl& p, const Vec& chain_prev,
                            const Vec& forces);

/// Exact constraint solve (sequential backward Euler).
Vec diffusion_sequential_solve(const DiffusionControl& p, const Vec& forces);

/// Backward adjoint recursion (I - dt A)^T lambda_n = lambda_{n+1} seeded by
/// a terminal solve against 2 (x_N - x*); returns lambda_1 .. lambda_N.
std::vector<Vec> diffusion_adjoint(const DiffusionControl& p, const Vec& x_N);

/// Euclidean gradient of the discrete objective: dJ/df_n = dt * lambda_n.
Vec diffusion_gradient_euclidean(const DiffusionControl& p, const std::vector<Vec>& lambdas);

/// Gradient in the time-L2 metric (the force is a discretized function of
/// time): just the adjoint chain itself. This is the convention the
/// optimizers use; it differs from the Euclidean form by the dt factor.
Vec diffusion_gradient_metric(const DiffusionControl& p, const std::vector<Vec>& lambdas);

/// J(x_N) = ||x_N - x*||^2 evaluated on a chain's terminal state.
double diffusion_objective(const DiffusionControl& p, const Vec& chain);

/// Re-solves the constraint exactly for the given forces, then evaluates J.
double diffusion_true_objective(const DiffusionControl& p, const Vec& forces);

adjoint::ConstrainedProblem diffusion_constrained(const DiffusionControl& p);

}  // namespace nlsplit::problems
