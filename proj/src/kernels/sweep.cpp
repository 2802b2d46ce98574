#include "nlsplit/kernels/sweep.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlsplit::kernels {

namespace {

/// Sweep one angle; returns the outgoing face value.
double sweep_angle(const SweepSpec& spec, int d, const Vec& source, Vec& psi) {
  const int n = spec.n_cells;
  const double mu = (*spec.mu)[d];
  const double a = 2.0 * std::fabs(mu) / spec.dx;
  const double denom = spec.sigma_t + a;
  const double* src = source.data() + static_cast<std::size_t>(d) * n;
  double* out = psi.data() + static_cast<std::size_t>(d) * n;

  if (mu > 0.0) {
    double f = (*spec.inflow_left)[d];
    for (int i = 0; i < n; ++i) {
      const double c = (src[i] + a * f) / denom;
      out[i] = c;
      f = 2.0 * c - f;
    }
    return f;
  }
  double f = (*spec.inflow_right)[d];
  for (int i = n - 1; i >= 0; --i) {
    const double c = (src[i] + a * f) / denom;
    out[i] = c;
    f = 2.0 * c - f;
  }
  return f;
}

}  // namespace

void dd_sweep_serial(const SweepSpec& spec, const Vec& source, Vec& psi, Vec* out_face) {
  const int n_angles = static_cast<int>(spec.mu->size());
  for (int d = 0; d < n_angles; ++d) {
    const double f = sweep_angle(spec, d, source, psi);
    if (out_face) (*out_face)[d] = f;
  }
}

void dd_sweep(const SweepSpec& spec, const Vec& source, Vec& psi, Vec* out_face, int threads) {
  if (threads <= 1) {
    dd_sweep_serial(spec, source, psi, out_face);
    return;
  }
#ifdef _OPENMP
  const int n_angles = static_cast<int>(spec.mu->size());
#pragma omp parallel for schedule(static) num_threads(threads)
  for (int d = 0; d < n_angles; ++d) {
    const double f = sweep_angle(spec, d, source, psi);
    if (out_face) (*out_face)[d] = f;
  }
#else
  dd_sweep_serial(spec, source, psi, out_face);
#endif
}

void dd_apply_serial(const SweepSpec& spec, const Vec& psi, Vec& out) {
  const int n = spec.n_cells;
  const int n_angles = static_cast<int>(spec.mu->size());
  for (int d = 0; d < n_angles; ++d) {
    const double mu = (*spec.mu)[d];
    const double* c = psi.data() + static_cast<std::size_t>(d) * n;
    double* o = out.data() + static_cast<std::size_t>(d) * n;
    if (mu > 0.0) {
      double fl = 0.0;
      for (int i = 0; i < n; ++i) {
        const double fr = 2.0 * c[i] - fl;
        o[i] = mu * (fr - fl) / spec.dx + spec.sigma_t * c[i];
        fl = fr;
      }
    } else {
      double fr = 0.0;
      for (int i = n - 1; i >= 0; --i) {
        const double fl = 2.0 * c[i] - fr;
        o[i] = mu * (fr - fl) / spec.dx + spec.sigma_t * c[i];
        fr = fl;
      }
    }
  }
}

}  // namespace nlsplit::kernels
