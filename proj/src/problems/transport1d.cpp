#include "nlsplit/problems/transport1d.hpp"

#include <cmath>

#include "nlsplit/numerics.hpp"

namespace nlsplit::problems {

namespace {

constexpr double kPi = 3.14159265358979323846;

kernels::SweepSpec sweep_spec(const Transport1D& p, const Vec& mu, const Vec& in_l,
                              const Vec& in_r) {
  kernels::SweepSpec s;
  s.n_cells = p.n_cells;
  s.dx = p.dx;
  s.sigma_t = p.sigma_t;
  s.mu = &mu;
  s.inflow_left = &in_l;
  s.inflow_right = &in_r;
  return s;
}

}  // namespace

Vec transport1d_scalar_flux(const Transport1D& p, const Vec& psi) {
  Vec phi(p.n_cells, 0.0);
  for (int d = 0; d < p.n_angles; ++d)
    for (int i = 0; i < p.n_cells; ++i) phi[i] += p.w[d] * psi[d * p.n_cells + i];
  return phi;
}

Vec transport1d_sigma_s(const Transport1D& p, const Vec& phi) {
  Vec s(p.n_cells);
  for (int i = 0; i < p.n_cells; ++i) {
    s[i] = p.sigma_s0 + p.alpha_scatter * phi[i] * phi[i];
    if (!(s[i] <= p.sigma_t))
      throw Error("transport1d: scattering cross section exceeds sigma_t (supercritical)");
  }
  return s;
}

Vec transport1d_sigma_s_tilde(const Transport1D& p, const Vec& phi) {
  Vec s(p.n_cells);
  for (int i = 0; i < p.n_cells; ++i) {
    s[i] = p.sigma_s0 + 3.0 * p.alpha_scatter * phi[i] * phi[i];
    if (!(s[i] <= p.sigma_t))
      throw Error("transport1d: adjoint scattering cross section exceeds sigma_t");
  }
  return s;
}

Vec transport1d_sweep(const Transport1D& p, const Vec& phi_frozen, const Vec& q,
                      Vec* out_face) {
  const Vec sig = transport1d_sigma_s(p, phi_frozen);
  Vec source(p.dof());
  for (int d = 0; d < p.n_angles; ++d)
    for (int i = 0; i < p.n_cells; ++i)
      source[d * p.n_cells + i] = 0.5 * sig[i] * phi_frozen[i] + q[d * p.n_cells + i];

  Vec psi(p.dof());
  const kernels::SweepSpec spec = sweep_spec(p, p.mu, p.inflow_left, p.inflow_right);
  kernels::dd_sweep(spec, source, psi, out_face, p.threads);
  if (p.counters) p.counters->forward += 1;
  return psi;
}

Vec transport1d_solver_iteration(const Transport1D& p, const Vec& psi, const Vec& q) {
  return transport1d_sweep(p, transport1d_scalar_flux(p, psi), q, nullptr);
}

double transport1d_weighted_norm(const Transport1D& p, const Vec& v) {
  double s = 0.0;
  for (int d = 0; d < p.n_angles; ++d)
    for (int i = 0; i < p.n_cells; ++i) {
      const double x = v[d * p.n_cells + i];
      s += p.w[d] * p.dx * x * x;
    }
  return std::sqrt(s);
}

TransportSolveResult transport1d_solve_exact(const Transport1D& p, const Vec& q, double tol,
                                             long cap) {
  TransportSolveResult r;
  r.psi.assign(p.dof(), 0.0);
  r.out_face.assign(p.n_angles, 0.0);
  for (long it = 0; it < cap; ++it) {
    Vec next = transport1d_sweep(p, transport1d_scalar_flux(p, r.psi), q, &r.out_face);
    ++r.sweeps;
    const double diff = transport1d_weighted_norm(p, linalg::sub(next, r.psi));
    r.psi = std::move(next);
    if (diff <= 0.25 * tol) return r;
  }
  throw InnerSolveFailure("transport1d_solve_exact: iteration cap reached");
}

Vec transport1d_adjoint_solve(const Transport1D& p, const Vec& psi, const Vec& rhs,
                              double tol) {
  const Vec phi = transport1d_scalar_flux(p, psi);
  const Vec sig_tilde = transport1d_sigma_s_tilde(p, phi);

  // Euclidean rhs -> adjoint-equation source (unweight by w_d dx).
  Vec s(p.dof());
  for (int d = 0; d < p.n_angles; ++d)
    for (int i = 0; i < p.n_cells; ++i)
      s[d * p.n_cells + i] = rhs[d * p.n_cells + i] / (p.w[d] * p.dx);

  Vec mu_rev(p.n_angles);
  for (int d = 0; d < p.n_angles; ++d) mu_rev[d] = -p.mu[d];
  const Vec zero(p.n_angles, 0.0);
  const kernels::SweepSpec spec = sweep_spec(p, mu_rev, zero, zero);

  Vec lambda(p.dof(), 0.0);
  Vec source(p.dof());
  const long cap = 100000;
  for (long it = 0; it < cap; ++it) {
    const Vec phi_l = transport1d_scalar_flux(p, lambda);
    for (int d = 0; d < p.n_angles; ++d)
      for (int i = 0; i < p.n_cells; ++i)
        source[d * p.n_cells + i] = 0.5 * sig_tilde[i] * phi_l[i] + s[d * p.n_cells + i];
    Vec next(p.dof());
    kernels::dd_sweep(spec, source, next, nullptr, p.threads);
    if (p.counters) p.counters->adjoint_side += 1;
    const double diff = transport1d_weighted_norm(p, linalg::sub(next, lambda));
    lambda = std::move(next);
    if (diff <= 0.25 * tol) return lambda;
  }
  throw InnerSolveFailure("transport1d_adjoint_solve: iteration cap reached");
}

Vec transport1d_gradient_pairing(const Transport1D& p, const Vec& lambda) {
  Vec g(p.dof());
  for (int d = 0; d < p.n_angles; ++d)
    for (int i = 0; i < p.n_cells; ++i)
      g[d * p.n_cells + i] = -p.w[d] * p.dx * lambda[d * p.n_cells + i];
  return g;
}

double transport1d_objective(const Transport1D& p, const Vec& psi) {
  const Vec diff = linalg::sub(psi, p.psi_tar);
  const double n = transport1d_weighted_norm(p, diff);
  return 0.5 * n * n;
}

Transport1D transport1d_build(const Transport1DParams& params) {
  Transport1D p;
  p.n_cells = params.n_cells;
  p.n_angles = params.n_angles;
  p.slab_width = params.slab_width;
  p.dx = params.slab_width / params.n_cells;
  p.sigma_t = params.sigma_t;
  p.sigma_s0 = params.sigma_s0;
  p.alpha_scatter = params.alpha_scatter;
  p.threads = params.threads;
  p.counters = std::make_shared<adjoint::SolveCounters>();

  const auto quad = numerics::gauss_legendre(params.n_angles);
  p.mu = quad.nodes;
  p.w = quad.weights;
  p.inflow_left.assign(p.n_angles, params.inflow);
  p.inflow_right.assign(p.n_angles, params.inflow);

  // Manufacture the target from a smooth reference source.
  p.q_ref.resize(p.dof());
  for (int d = 0; d < p.n_angles; ++d)
    for (int i = 0; i < p.n_cells; ++i) {
      const double x = (i + 0.5) * p.dx;
      p.q_ref[d * p.n_cells + i] =
          (1.0 + 0.5 * std::sin(2.0 * kPi * x / params.slab_width)) * (1.0 + 0.3 * p.mu[d]);
    }
  p.psi_tar.assign(p.dof(), 0.0);
  TransportSolveResult tar = transport1d_solve_exact(p, p.q_ref, 1e-13);
  p.psi_tar = std::move(tar.psi);
  p.counters->forward = 0;  // manufacturing sweeps are not part of any run
  return p;
}

adjoint::ConstrainedProblem transport1d_constrained(const Transport1D& p) {
  adjoint::ConstrainedProblem cp;
  cp.state_dim = p.dof();
  cp.param_dim = p.dof();
  cp.counters = p.counters;
  auto prob = std::make_shared<Transport1D>(p);

  cp.solver_iteration = [prob](const Vec& x, const Vec& theta) {
    return transport1d_solver_iteration(*prob, x, theta);
  };
  cp.objective = [prob](const Vec& x, const Vec&) { return transport1d_objective(*prob, x); };
  cp.dJ_dx = [prob](const Vec& x, const Vec&) {
    Vec g(prob->dof());
    for (int d = 0; d < prob->n_angles; ++d)
      for (int i = 0; i < prob->n_cells; ++i) {
        const int k = d * prob->n_cells + i;
        g[k] = prob->w[d] * prob->dx * (x[k] - prob->psi_tar[k]);
      }
    return g;
  };
  cp.dJ_dtheta = [prob](const Vec&, const Vec&) { return Vec(prob->dof(), 0.0); };
  cp.adjoint_solve = [prob](const Vec& x, const Vec&, const Vec& rhs) {
    return transport1d_adjoint_solve(*prob, x, rhs);
  };
  cp.pair_dF_dtheta = [prob](const Vec& lambda, const Vec&, const Vec&) {
    return transport1d_gradient_pairing(*prob, lambda);
  };
  cp.state_norm = [prob](const Vec& v) { return transport1d_weighted_norm(*prob, v); };
  return cp;
}

}  // namespace nlsplit::problems
