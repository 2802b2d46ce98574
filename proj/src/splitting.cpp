#include "nlsplit/splitting.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "nlsplit/numerics.hpp"

namespace nlsplit::splitting {

using linalg::matvec;
using linalg::matvec_transpose;

SplitGradientProblem make_linearly_implicit(int dim,
                                            std::function<Mat(const Vec&)> L,
                                            std::function<Vec(const Vec&)> g,
                                            std::function<double(const Vec&)> cost) {
  SplitGradientProblem p;
  p.dim = dim;
  p.cost = std::move(cost);
  auto Lf = std::move(L);
  auto gf = std::move(g);
  p.grad = [Lf, gf, dim](const Vec& x) {
    if (static_cast<int>(x.size()) != dim) throw DimensionMismatch("linearly implicit: bad x size");
    return linalg::add(matvec(Lf(x), x), gf(x));
  };
  p.split_grad = [Lf, gf, dim](const Vec& x, const Vec& y) {
    if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
      throw DimensionMismatch("linearly implicit: bad argument size");
    return linalg::add(matvec(Lf(x), y), gf(x));
  };
  p.d2_split_grad = [Lf](const Vec& x, const Vec&) { return Lf(x); };
  p.li = SplitGradientProblem::LinearlyImplicit{Lf, gf};
  return p;
}

SplitGradientProblem make_avf(int dim,
                              std::function<double(const Vec&)> cost,
                              std::function<Vec(const Vec&)> grad,
                              int quad_order) {
  SplitGradientProblem p;
  p.dim = dim;
  p.cost = std::move(cost);
  p.grad = grad;
  const auto quad = numerics::gauss_legendre_01(quad_order);
  auto split = [grad, quad, dim](const Vec& x, const Vec& y) {
    Vec avg(dim, 0.0);
    Vec pt(dim);
    for (std::size_t j = 0; j < quad.nodes.size(); ++j) {
      const double xi = quad.nodes[j];
      for (int i = 0; i < dim; ++i) pt[i] = xi * x[i] + (1.0 - xi) * y[i];
      const Vec g = grad(pt);
      for (int i = 0; i < dim; ++i) avg[i] += quad.weights[j] * g[i];
    }
    return avg;
  };
  p.split_grad = split;
  p.d2_split_grad = [split, dim](const Vec& x, const Vec& y) {
    const double h = 1e-6 * (1.0 + linalg::norm2(y));
    Mat J(dim, dim);
    Vec yp(y), ym(y);
    for (int j = 0; j < dim; ++j) {
      yp[j] = y[j] + h;
      ym[j] = y[j] - h;
      const Vec gp = split(x, yp);
      const Vec gm = split(x, ym);
      for (int i = 0; i < dim; ++i) J(i, j) = (gp[i] - gm[i]) / (2.0 * h);
      yp[j] = y[j];
      ym[j] = y[j];
    }
    return J;
  };
  return p;
}

SplitGradientProblem make_residual_splitting(const ResidualProblem& rp) {
  SplitGradientProblem p;
  p.dim = rp.in_dim;
  const auto res = rp.residual;
  const auto jac = rp.jacobian;
  const int out_dim = rp.out_dim;
  const int in_dim = rp.in_dim;

  auto check = [out_dim, in_dim](const Mat& J, const Vec& r) {
    if (J.rows() != out_dim || J.cols() != in_dim || static_cast<int>(r.size()) != out_dim)
      throw DimensionMismatch("residual splitting: inconsistent residual/jacobian sizes");
  };

  p.cost = [res](const Vec& x) {
    const Vec r = res(x);
    return 0.5 * linalg::dot(r, r);
  };
  p.grad = [res, jac, check](const Vec& x) {
    const Mat J = jac(x);
    const Vec r = res(x);
    check(J, r);
    return matvec_transpose(J, r);
  };
  p.split_grad = [res, jac, check](const Vec& x, const Vec& y) {
    const Mat J = jac(x);
    const Vec r = res(y);
    check(J, r);
    return matvec_transpose(J, r);
  };
  p.d2_split_grad = [jac](const Vec& x, const Vec& y) {
    const Mat Jx = jac(x);
    if (x == y) return linalg::gram_serial(Jx);
    return linalg::matmul(linalg::transpose(Jx), jac(y));
  };
  return p;
}

}  // namespace nlsplit::splitting
