#pragma once

#include "nlsplit/linalg.hpp"

namespace nlsplit::kernels {

/// Advance the whole backward-Euler state chain one splitting iteration:
///   (I - dt A) x_next[n+1] = (1-alpha) x_next[n] + alpha x_prev[n] + dt f[n+1].
/// Chains are stored flat as x[n * dim .. (n+1) * dim) for n = 0..N-1
/// holding states 1..N; x0 is passed separately. For alpha = 1 every step
/// depends only on the previous iterate's chain, so the timesteps decouple
/// and the parallel version (bit-identical) is available.
void chain_advance_serial(const linalg::LuFactor& iadt, double alpha, double dt,
                          const Vec& x0, const Vec& chain_prev, const Vec& forces,
                          Vec& chain_next);
void chain_advance(const linalg::LuFactor& iadt, double alpha, double dt, const Vec& x0,
                   const Vec& chain_prev, const Vec& forces, Vec& chain_next, int threads);

}  // namespace nlsplit::kernels
