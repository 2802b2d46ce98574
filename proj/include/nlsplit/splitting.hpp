#pragma once

#include <functional>
#include <optional>

#include "nlsplit/linalg.hpp"

namespace nlsplit::splitting {

/// A cost together with a two-argument split gradient g(x, y) that agrees
/// with the true gradient on the diagonal: g(x, x) = grad(x). The second
/// argument is the one treated implicitly by the semi-implicit steppers.
struct SplitGradientProblem {
  int dim = 0;

  /// May be empty for gradient-only problems; cost-based stopping is then
  /// skipped by the drivers.
  std::function<double(const Vec&)> cost;
  std::function<Vec(const Vec&)> grad;
  std::function<Vec(const Vec&, const Vec&)> split_grad;

  /// Derivative of split_grad in its second slot, used as the Newton /
  /// preconditioner matrix I + gamma * d2.
  std::function<Mat(const Vec&, const Vec&)> d2_split_grad;

  struct LinearlyImplicit {
    std::function<Mat(const Vec&)> L;
    std::function<Vec(const Vec&)> g;
  };
  /// Present when split_grad(x,y) = L(x) y + g(x); the implicit step then
  /// reduces to a single linear solve.
  std::optional<LinearlyImplicit> li;
};

/// Nonlinear least squares: residual r(x) = f(x) - v and its Jacobian.
struct ResidualProblem {
  int out_dim = 0;  // number of residual components
  int in_dim = 0;   // parameter dimension
  std::function<Vec(const Vec&)> residual;
  std::function<Mat(const Vec&)> jacobian;
};

/// Splitting of the form L(x) y + g(x). Cost is optional.
SplitGradientProblem make_linearly_implicit(int dim,
                                            std::function<Mat(const Vec&)> L,
                                            std::function<Vec(const Vec&)> g,
                                            std::function<double(const Vec&)> cost = nullptr);

/// Average-vector-field discrete gradient: the mean of grad along the
/// segment between the two arguments, by Gauss-Legendre quadrature on [0,1].
/// Satisfies the mean-value property exactly for polynomial gradients of
/// degree <= 2*quad_order - 1. d2 is formed by central differences in the
/// second slot with step 1e-6 * (1 + ||y||).
SplitGradientProblem make_avf(int dim,
                              std::function<double(const Vec&)> cost,
                              std::function<Vec(const Vec&)> grad,
                              int quad_order = 8);

/// Residual/Jacobian splitting J(x)^T r(y) for nonlinear least squares;
/// the Newton(1) step with this splitting is the Levenberg-Marquardt update
/// with damping 1/gamma.
SplitGradientProblem make_residual_splitting(const ResidualProblem& p);

}  // namespace nlsplit::splitting
