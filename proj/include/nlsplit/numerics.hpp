#pragma once

#include <functional>

#include "nlsplit/linalg.hpp"

namespace nlsplit::numerics {

struct Quadrature {
  Vec nodes;
  Vec weights;
};

/// Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
Quadrature gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
Quadrature gauss_legendre_01(int n);

/// Central-difference gradient of a scalar function.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h);

/// Central-difference Jacobian of a vector function (columns = input coords).
Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h);

}  // namespace nlsplit::numerics
