#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "nlsplit/linalg.hpp"

namespace nlsplit::kernels {

using Cplx = std::complex<double>;
using State = std::vector<Cplx>;

/// A Pauli word: factor index in {0,1,2,3} per qubit (0 = identity).
using PauliWord = std::vector<std::uint8_t>;

/// out = (sigma_{w[0]} (x) ... (x) sigma_{w[n-1]}) |in>, applied one 2x2
/// factor at a time; qubit t addresses bit t of the basis index.
void apply_pauli_word(const PauliWord& word, const State& in, State& out);

/// Real part of <psi| A_i |psi> for every word (value is real for Hermitian
/// words up to rounding). Parallel version splits over operators with
/// disjoint writes, so results are bit-identical to the serial one.
void pauli_expectations_serial(const std::vector<PauliWord>& words, const State& psi,
                               double* out);
void pauli_expectations(const std::vector<PauliWord>& words, const State& psi, double* out,
                        int threads);

/// Jacobian rows of the expectation map in real coordinates
/// (Re psi stacked over Im psi): row i = 2 * (Re(A_i psi), Im(A_i psi)).
void pauli_jacobian_serial(const std::vector<PauliWord>& words, const State& psi, Mat& J);
void pauli_jacobian(const std::vector<PauliWord>& words, const State& psi, Mat& J,
                    int threads);

}  // namespace nlsplit::kernels
