#include "nlsplit/kernels/chain.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlsplit::kernels {

namespace {

Vec step_rhs(int dim, double alpha, double dt, const Vec& prev_state_next_chain,
             const Vec& prev_state_prev_chain, const Vec& forces, int n) {
  Vec rhs(dim);
  for (int i = 0; i < dim; ++i)
    rhs[i] = (1.0 - alpha) * prev_state_next_chain[i] + alpha * prev_state_prev_chain[i] +
             dt * forces[static_cast<std::size_t>(n) * dim + i];
  return rhs;
}

}  // namespace

void chain_advance_serial(const linalg::LuFactor& iadt, double alpha, double dt,
                          const Vec& x0, const Vec& chain_prev, const Vec& forces,
                          Vec& chain_next) {
  const int dim = iadt.dim();
  const int steps = static_cast<int>(chain_prev.size()) / dim;
  chain_next.resize(chain_prev.size());
  Vec cur(x0);
  for (int n = 0; n < steps; ++n) {
    const Vec* prev_n = nullptr;
    Vec prev_tmp;
    if (n == 0) {
      prev_n = &x0;
    } else {
      prev_tmp.assign(chain_prev.begin() + static_cast<std::size_t>(n - 1) * dim,
                      chain_prev.begin() + static_cast<std::size_t>(n) * dim);
      prev_n = &prev_tmp;
    }
    const Vec rhs = step_rhs(dim, alpha, dt, cur, *prev_n, forces, n);
    const Vec xn = iadt.solve(rhs);
    for (int i = 0; i < dim; ++i) chain_next[static_cast<std::size_t>(n) * dim + i] = xn[i];
    cur = xn;
  }
}

void chain_advance(const linalg::LuFactor& iadt, double alpha, double dt, const Vec& x0,
                   const Vec& chain_prev, const Vec& forces, Vec& chain_next, int threads) {
  const int dim = iadt.dim();
  const int steps = static_cast<int>(chain_prev.size()) / dim;
  if (threads <= 1 || alpha != 1.0) {
    chain_advance_serial(iadt, alpha, dt, x0, chain_prev, forces, chain_next);
    return;
  }
  chain_next.resize(chain_prev.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (int n = 0; n < steps; ++n) {
    // alpha = 1: rhs depends only on the previous iterate's chain.
    Vec prev(dim);
    if (n == 0) {
      prev = x0;
    } else {
      for (int i = 0; i < dim; ++i) prev[i] = chain_prev[static_cast<std::size_t>(n - 1) * dim + i];
    }
    Vec rhs(dim);
    for (int i = 0; i < dim; ++i)
      rhs[i] = prev[i] + dt * forces[static_cast<std::size_t>(n) * dim + i];
    const Vec xn = iadt.solve(rhs);
    for (int i = 0; i < dim; ++i) chain_next[static_cast<std::size_t>(n) * dim + i] = xn[i];
  }
}

}  // namespace nlsplit::kernels
