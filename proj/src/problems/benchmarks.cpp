#include "nlsplit/problems/benchmarks.hpp"

#include <cmath>

#include "nlsplit/numerics.hpp"
#include "nlsplit/rng.hpp"

namespace nlsplit::problems {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// sin(2*pi*t)/t with the removable singularity at t = 0 filled in.
double sinc_ratio(double t) {
  if (std::fabs(t) < 1e-8) return 2.0 * kPi;
  return std::sin(2.0 * kPi * t) / t;
}

BenchmarkSpec make_rastrigin() {
  auto cost = [](const Vec& x) {
    double c = 20.0;
    for (int i = 0; i < 2; ++i) c += x[i] * x[i] - 10.0 * std::cos(2.0 * kPi * x[i]);
    return c;
  };
  auto L = [](const Vec& x) {
    Mat m(2, 2);
    for (int i = 0; i < 2; ++i) m(i, i) = 2.0 + 20.0 * kPi * sinc_ratio(x[i]);
    return m;
  };
  auto g = [](const Vec&) { return Vec(2, 0.0); };

  BenchmarkSpec s;
  s.name = "rastrigin";
  s.li = splitting::make_linearly_implicit(2, L, g, cost);
  s.avf = splitting::make_avf(2, cost, s.li.grad, 8);
  s.default_x0 = {2.0, 2.0};
  s.init_box = {0.0, 3.0, 0.0, 3.0};
  return s;
}

BenchmarkSpec make_rosenbrock() {
  auto cost = [](const Vec& x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
  };
  auto L = [](const Vec& x) {
    Mat m(2, 2);
    m(0, 0) = 400.0 * x[0] * x[0];
    m(1, 0) = -200.0 * x[0];
    m(1, 1) = 200.0;
    return m;
  };
  auto g = [](const Vec& x) {
    return Vec{-400.0 * x[0] * x[1] + 2.0 * x[0] - 2.0, 0.0};
  };

  BenchmarkSpec s;
  s.name = "rosenbrock";
  s.li = splitting::make_linearly_implicit(2, L, g, cost);
  s.avf = splitting::make_avf(2, cost, s.li.grad, 8);
  s.default_x0 = {10.0, 5.0};
  s.init_box = {-2.0, 2.0, -1.0, 3.0};
  return s;
}

BenchmarkSpec make_beale(int quad_order) {
  auto cost = [](const Vec& x) {
    const double t1 = 1.5 - x[0] + x[0] * x[1];
    const double t2 = 2.25 - x[0] + x[0] * x[1] * x[1];
    const double t3 = 2.625 - x[0] + x[0] * x[1] * x[1] * x[1];
    return t1 * t1 + t2 * t2 + t3 * t3;
  };
  // Gradient polynomials in x2 (derived from the cost):
  //   dC/dx1 = 2 x1 P(x2) + 5.25 x2^3 + 4.5 x2^2 + 3 x2 - 12.75
  //   dC/dx2 = 6 x1 (x1 Q(x2) + 2.625 x2^2 + 1.5 x2 + 0.5)
  auto P = [](double t) {
    return ((((t * t + 1.0) * t - 2.0) * t - 1.0) * t - 2.0) * t + 3.0;
  };
  auto Q = [](double t) {
    return (((t * t + 2.0 / 3.0) * t - 1.0) * t - 1.0 / 3.0) * t - 1.0 / 3.0;
  };
  auto L = [P, Q](const Vec& x) {
    const double t = x[1];
    Mat m(2, 2);
    m(0, 0) = 2.0 * P(t);
    m(0, 1) = 5.25 * t * t + 4.5 * t + 3.0;
    m(1, 0) = 6.0 * (x[0] * Q(t) + 2.625 * t * t);
    m(1, 1) = 9.0 * x[0];
    return m;
  };
  auto g = [](const Vec& x) { return Vec{-12.75, 3.0 * x[0]}; };

  BenchmarkSpec s;
  s.name = "beale";
  s.li = splitting::make_linearly_implicit(2, L, g, cost);
  s.avf = splitting::make_avf(2, cost, s.li.grad, quad_order);
  s.default_x0 = {-2.0, 2.0};
  s.init_box = {-4.0, 4.0, -4.0, 4.0};
  return s;
}

void self_check(const BenchmarkSpec& s) {
  Rng rng(0x5eedbe11);
  for (int trial = 0; trial < 8; ++trial) {
    Vec x{rng.uniform(-2.0, 3.0), rng.uniform(-2.0, 3.0)};
    Vec y{rng.uniform(-2.0, 3.0), rng.uniform(-2.0, 3.0)};
    const Vec grad = s.li.grad(x);
    const Vec diag = s.li.split_grad(x, x);
    const double gn = linalg::norm2(grad);
    if (linalg::norm2(linalg::sub(diag, grad)) > 1e-8 * (1.0 + gn))
      throw Error(s.name + ": splitting inconsistent with gradient");
    const Vec fd = numerics::fd_gradient(s.li.cost, x, 1e-6);
    if (linalg::norm2(linalg::sub(fd, grad)) > 1e-5 * (1.0 + gn))
      throw Error(s.name + ": gradient inconsistent with cost");
    (void)y;
  }
}

}  // namespace

BenchmarkSpec benchmark(const std::string& name, int avf_quad_order) {
  BenchmarkSpec s;
  if (name == "rastrigin")
    s = make_rastrigin();
  else if (name == "rosenbrock")
    s = make_rosenbrock();
  else if (name == "beale")
    s = make_beale(avf_quad_order);
  else
    throw UnknownBenchmark("unknown benchmark '" + name + "'");
  if (avf_quad_order != 8 && name != "beale")
    s.avf = splitting::make_avf(2, s.li.cost, s.li.grad, avf_quad_order);
  self_check(s);
  return s;
}

}  // namespace nlsplit::problems
