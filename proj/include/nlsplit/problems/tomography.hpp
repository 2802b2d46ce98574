#pragma once

#include <cstdint>

#include "nlsplit/kernels/pauli.hpp"
#include "nlsplit/splitting.hpp"

namespace nlsplit::problems {

/// Pure-state reconstruction: match expectation values of a random subset of
/// Pauli-word operators against values computed from a prepared state.
/// States are optimized over the raw real parametrization (Re c, Im c); no
/// normalization constraint is imposed.
struct TomographyProblem {
  int n_qubits = 0;
  std::vector<kernels::PauliWord> words;
  Vec targets;                    // a_i = <psi*|A_i|psi*>
  kernels::State prepared_state;  // unit norm
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Draws a random unit state (i.i.d. complex normal amplitudes) and
/// n_operators distinct Pauli words. Throws TooManyOperators past 4^n.
TomographyProblem tomography_build(int n_qubits, int n_operators, std::uint64_t seed,
                                   int threads = 1);

/// Residual r_i(u) = <psi(u)|A_i|psi(u)> - a_i over real coordinates; the
/// Jacobian row is 2 * (A_i psi) in real coordinates.
splitting::ResidualProblem tomography_residual(const TomographyProblem& p);

/// |<a|b>|^2 after normalizing both states. Throws ZeroState.
double fidelity(const kernels::State& a, const kernels::State& b);

// Real <-> complex coordinate helpers (Re block then Im block).
Vec state_to_real(const kernels::State& s);
kernels::State real_to_state(const Vec& u);

/// Random unit state in real coordinates from the given stream.
Vec random_state_real(int n_qubits, std::uint64_t seed);

}  // namespace nlsplit::problems
