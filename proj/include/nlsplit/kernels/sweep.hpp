#pragma once

#include <vector>

#include "nlsplit/linalg.hpp"

namespace nlsplit::kernels {

/// Geometry and per-angle data for a diamond-difference slab sweep.
/// Angular flux layout is angle-major: psi[d * n_cells + i].
struct SweepSpec {
  int n_cells = 0;
  double dx = 0.0;
  double sigma_t = 0.0;
  const Vec* mu = nullptr;           // quadrature angles
  const Vec* inflow_left = nullptr;  // per-angle boundary value, used for mu > 0
  const Vec* inflow_right = nullptr; // per-angle boundary value, used for mu < 0
};

/// One attenuation sweep per angle against the frozen cell source
/// source[d * n_cells + i]; each angle is independent, so the parallel
/// version is bit-identical to the serial one. Outgoing face values are
/// written to out_face[d] when requested (for balance diagnostics).
void dd_sweep_serial(const SweepSpec& spec, const Vec& source, Vec& psi, Vec* out_face);
void dd_sweep(const SweepSpec& spec, const Vec& source, Vec& psi, Vec* out_face, int threads);

/// Matrix-free application of the per-angle streaming+removal operator
/// (the homogeneous part of the sweep system) to cell values; used by the
/// adjoint transpose diagnostics.
void dd_apply_serial(const SweepSpec& spec, const Vec& psi, Vec& out);

}  // namespace nlsplit::kernels
