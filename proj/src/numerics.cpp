#include "nlsplit/numerics.hpp"

#include <cmath>

namespace nlsplit::numerics {

Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Evaluate P_n and P_n' by recurrence.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

Quadrature gauss_legendre_01(int n) {
  Quadrature q = gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = 0.5 * (q.nodes[i] + 1.0);
    q.weights[i] *= 0.5;
  }
  return q;
}

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  Vec g(x.size());
  Vec xp(x), xm(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double hi = h * (1.0 + std::fabs(x[i]));
    xp[i] = x[i] + hi;
    xm[i] = x[i] - hi;
    g[i] = (f(xp) - f(xm)) / (2.0 * hi);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return g;
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h) {
  Vec xp(x), xm(x);
  Mat J;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double hj = h * (1.0 + std::fabs(x[j]));
    xp[j] = x[j] + hj;
    xm[j] = x[j] - hj;
    const Vec fp = f(xp);
    const Vec fm = f(xm);
    if (J.rows() == 0) J = Mat(static_cast<int>(fp.size()), static_cast<int>(x.size()));
    for (std::size_t i = 0; i < fp.size(); ++i)
      J(static_cast<int>(i), static_cast<int>(j)) = (fp[i] - fm[i]) / (2.0 * hj);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return J;
}

}  // namespace nlsplit::numerics
