#include "nlsplit/problems/diffusion.hpp"

#include <cmath>

#include "nlsplit/kernels/chain.hpp"

namespace nlsplit::problems {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec terminal_state(const DiffusionControl& p, const Vec& chain) {
  return Vec(chain.end() - p.n_nodes, chain.end());
}

/// General-rhs transpose recursion: (I - dt A)^T lambda_n = lambda_{n+1} + rhs_n,
/// n = N..1 with lambda_{N+1} = 0. rhs is a flat chain vector.
std::vector<Vec> adjoint_chain(const DiffusionControl& p, const Vec& rhs) {
  std::vector<Vec> lambdas(p.n_steps);
  Vec carry(p.n_nodes, 0.0);
  for (int n = p.n_steps - 1; n >= 0; --n) {
    for (int i = 0; i < p.n_nodes; ++i) carry[i] += rhs[static_cast<std::size_t>(n) * p.n_nodes + i];
    lambdas[n] = p.iadt->solve_transpose(carry);
    carry = lambdas[n];
  }
  return lambdas;
}

}  // namespace

DiffusionControl diffusion_build(const DiffusionParams& params) {
  DiffusionControl p;
  p.n_nodes = params.n_nodes;
  p.T = params.T;
  p.n_steps = params.n_steps;
  p.alpha = params.alpha;
  p.threads = params.threads;
  p.dt = params.T / params.n_steps;
  p.h = 1.0 / (params.n_nodes + 1);
  p.counters = std::make_shared<adjoint::SolveCounters>();

  const double inv_h2 = 1.0 / (p.h * p.h);
  p.A = Mat(p.n_nodes, p.n_nodes);
  for (int i = 0; i < p.n_nodes; ++i) {
    p.A(i, i) = -2.0 * inv_h2;
    if (i > 0) p.A(i, i - 1) = inv_h2;
    if (i + 1 < p.n_nodes) p.A(i, i + 1) = inv_h2;
  }
  Mat M = Mat::identity(p.n_nodes);
  for (int i = 0; i < p.n_nodes; ++i)
    for (int j = 0; j < p.n_nodes; ++j) M(i, j) -= p.dt * p.A(i, j);
  p.iadt = std::make_shared<linalg::LuFactor>(M);

  p.x0.resize(p.n_nodes);
  p.x_target.resize(p.n_nodes);
  for (int i = 0; i < p.n_nodes; ++i) {
    const double x = (i + 1) * p.h;
    p.x0[i] = std::sin(6.0 * kPi * x);
    p.x_target[i] = std::sin(2.0 * kPi * x);
  }
  return p;
}

Vec diffusion_forward_split(const DiffusionControl& p, const Vec& chain_prev,
                            const Vec& forces) {
  if (static_cast<int>(chain_prev.size()) != p.chain_dof() ||
      static_cast<int>(forces.size()) != p.chain_dof())
    throw DimensionMismatch("diffusion_forward_split: chain/forces size mismatch");
  Vec next;
  kernels::chain_advance(*p.iadt, p.alpha, p.dt, p.x0, chain_prev, forces, next, p.threads);
  if (p.counters) p.counters->forward += 1;
  return next;
}

Vec diffusion_sequential_solve(const DiffusionControl& p, const Vec& forces) {
  Vec next;
  kernels::chain_advance_serial(*p.iadt, 0.0, p.dt, p.x0, Vec(p.chain_dof(), 0.0), forces, next);
  return next;
}

std::vector<Vec> diffusion_adjoint(const DiffusionControl& p, const Vec& x_N) {
  Vec rhs(p.chain_dof(), 0.0);
  for (int i = 0; i < p.n_nodes; ++i)
    rhs[static_cast<std::size_t>(p.n_steps - 1) * p.n_nodes + i] =
        2.0 * (x_N[i] - p.x_target[i]);
  return adjoint_chain(p, rhs);
}

Vec diffusion_gradient_euclidean(const DiffusionControl& p, const std::vector<Vec>& lambdas) {
  Vec g(p.chain_dof());
  for (int n = 0; n < p.n_steps; ++n)
    for (int i = 0; i < p.n_nodes; ++i)
      g[static_cast<std::size_t>(n) * p.n_nodes + i] = p.dt * lambdas[n][i];
  return g;
}

Vec diffusion_gradient_metric(const DiffusionControl& p, const std::vector<Vec>& lambdas) {
  Vec g(p.chain_dof());
  for (int n = 0; n < p.n_steps; ++n)
    for (int i = 0; i < p.n_nodes; ++i)
      g[static_cast<std::size_t>(n) * p.n_nodes + i] = lambdas[n][i];
  return g;
}

double diffusion_objective(const DiffusionControl& p, const Vec& chain) {
  double s = 0.0;
  for (int i = 0; i < p.n_nodes; ++i) {
    const double d = chain[static_cast<std::size_t>(p.n_steps - 1) * p.n_nodes + i] - p.x_target[i];
    s += d * d;
  }
  return s;
}

double diffusion_true_objective(const DiffusionControl& p, const Vec& forces) {
  return diffusion_objective(p, diffusion_sequential_solve(p, forces));
}

adjoint::ConstrainedProblem diffusion_constrained(const DiffusionControl& p) {
  adjoint::ConstrainedProblem cp;
  cp.state_dim = p.chain_dof();
  cp.param_dim = p.chain_dof();
  cp.counters = p.counters;
  auto prob = std::make_shared<DiffusionControl>(p);

  cp.solver_iteration = [prob](const Vec& x, const Vec& theta) {
    return diffusion_forward_split(*prob, x, theta);
  };
  cp.objective = [prob](const Vec& x, const Vec&) { return diffusion_objective(*prob, x); };
  cp.dJ_dx = [prob](const Vec& x, const Vec&) {
    Vec g(prob->chain_dof(), 0.0);
    const Vec xN = terminal_state(*prob, x);
    for (int i = 0; i < prob->n_nodes; ++i)
      g[static_cast<std::size_t>(prob->n_steps - 1) * prob->n_nodes + i] =
          2.0 * (xN[i] - prob->x_target[i]);
    return g;
  };
  cp.dJ_dtheta = [prob](const Vec&, const Vec&) { return Vec(prob->chain_dof(), 0.0); };
  cp.adjoint_solve = [prob](const Vec&, const Vec&, const Vec& rhs) {
    const std::vector<Vec> lam = adjoint_chain(*prob, rhs);
    Vec flat(prob->chain_dof());
    for (int n = 0; n < prob->n_steps; ++n)
      for (int i = 0; i < prob->n_nodes; ++i)
        flat[static_cast<std::size_t>(n) * prob->n_nodes + i] = lam[n][i];
    return flat;
  };
  // Time-L2 metric pairing: the gradient with respect to the force as a
  // function of time is -lambda_n (drivers pass rhs = -dJ/dx, flipping the
  // sign of the chain). The Euclidean form carries an extra dt.
  cp.pair_dF_dtheta = [prob](const Vec& lambda, const Vec&, const Vec&) {
    Vec g(prob->chain_dof());
    for (int k = 0; k < prob->chain_dof(); ++k) g[k] = -lambda[k];
    return g;
  };
  return cp;
}

}  // namespace nlsplit::problems
