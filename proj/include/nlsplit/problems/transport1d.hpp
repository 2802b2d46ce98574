#pragma once

#include <memory>

#include "nlsplit/adjoint.hpp"
#include "nlsplit/kernels/sweep.hpp"
#include "nlsplit/linalg.hpp"

namespace nlsplit::problems {

/// 1-D slab discrete-ordinates source-optimization problem with a nonlinear
/// scattering cross section sigma_s(phi) = sigma_s0 + alpha * phi^2.
/// Angular flux and source are stored angle-major: v[d * n_cells + i].
struct Transport1D {
  int n_cells = 0;
  int n_angles = 0;
  double slab_width = 1.0;
  double dx = 0.0;
  Vec mu;  // Gauss-Legendre angles on [-1, 1]
  Vec w;   // quadrature weights, sum to 2
  double sigma_t = 2.0;
  double sigma_s0 = 1.0;
  double alpha_scatter = 0.02;
  Vec inflow_left;   // per angle, used for mu > 0
  Vec inflow_right;  // per angle, used for mu < 0
  Vec psi_tar;       // target angular flux
  Vec q_ref;         // reference source that manufactured the target
  int threads = 1;
  std::shared_ptr<adjoint::SolveCounters> counters;

  int dof() const { return n_cells * n_angles; }
};

struct Transport1DParams {
  int n_cells = 64;
  int n_angles = 8;
  double slab_width = 1.0;
  double sigma_t = 2.0;
  double sigma_s0 = 1.0;
  double alpha_scatter = 0.02;
  double inflow = 1.0;  // isotropic incoming flux at both ends
  int threads = 1;
};

/// Builds the problem and manufactures the target flux by exactly solving
/// the nonlinear equation with a smooth reference source.
Transport1D transport1d_build(const Transport1DParams& params);

/// phi_i = sum_d w_d psi_{d,i}.
Vec transport1d_scalar_flux(const Transport1D& p, const Vec& psi);

/// sigma_s evaluated per cell; throws when supercritical (sigma_s > sigma_t).
Vec transport1d_sigma_s(const Transport1D& p, const Vec& phi);
/// Adjoint-modified cross section sigma_s0 + 3 alpha phi^2.
Vec transport1d_sigma_s_tilde(const Transport1D& p, const Vec& phi);

/// One frozen-source sweep: per angle, attenuate against the cell source
/// (sigma_s(phi_frozen)/2) phi_frozen + q with the prescribed inflow.
/// Counts as one forward transport solve. Outgoing faces optionally recorded.
Vec transport1d_sweep(const Transport1D& p, const Vec& phi_frozen, const Vec& q,
                      Vec* out_face = nullptr);

/// G(psi; q): recompute phi and sigma_s from psi, then one sweep.
Vec transport1d_solver_iteration(const Transport1D& p, const Vec& psi, const Vec& q);

struct TransportSolveResult {
  Vec psi;
  Vec out_face;  // per angle, from the last sweep
  long sweeps = 0;
};

/// Source-iterate to stagnation (successive w-norm difference below tol/4).
TransportSolveResult transport1d_solve_exact(const Transport1D& p, const Vec& q,
                                             double tol = 1e-12, long cap = 100000);

/// Solve the adjoint transport equation (reversed streaming, modified
/// scattering, zero outflow data) by source iteration of adjoint sweeps.
/// `rhs` is the Euclidean right-hand side passed by the drivers
/// (-dJ/dpsi); it is unweighted internally so the returned variable is the
/// adjoint flux itself. Adjoint sweeps are tallied separately from forward
/// sweeps.
Vec transport1d_adjoint_solve(const Transport1D& p, const Vec& psi, const Vec& rhs,
                              double tol = 1e-10);

/// Parameter gradient from the adjoint flux: -(w_d dx) lambda, the gradient
/// of the discrete objective with respect to the source entries.
Vec transport1d_gradient_pairing(const Transport1D& p, const Vec& lambda);

/// 1/2 || psi - psi_tar ||_w^2 with the (w_d dx)-weighted inner product.
double transport1d_objective(const Transport1D& p, const Vec& psi);

double transport1d_weighted_norm(const Transport1D& p, const Vec& v);

/// Wire the problem into the constrained-optimization interface.
adjoint::ConstrainedProblem transport1d_constrained(const Transport1D& p);

}  // namespace nlsplit::problems
