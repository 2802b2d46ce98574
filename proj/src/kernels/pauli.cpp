#include "nlsplit/kernels/pauli.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlsplit::kernels {

namespace {

/// Apply one single-qubit factor in place over tensor index `qubit`.
void apply_factor(std::uint8_t sigma, int qubit, State& s) {
  if (sigma == 0) return;
  const std::size_t bit = std::size_t{1} << qubit;
  const std::size_t dim = s.size();
  const Cplx im(0.0, 1.0);
  for (std::size_t k = 0; k < dim; ++k) {
    if (k & bit) continue;  // visit each (k, k|bit) pair once
    const std::size_t k1 = k | bit;
    const Cplx a = s[k];
    const Cplx b = s[k1];
    switch (sigma) {
      case 1:  // X
        s[k] = b;
        s[k1] = a;
        break;
      case 2:  // Y
        s[k] = -im * b;
        s[k1] = im * a;
        break;
      case 3:  // Z
        s[k1] = -b;
        break;
      default:
        break;
    }
  }
}

}  // namespace

void apply_pauli_word(const PauliWord& word, const State& in, State& out) {
  out = in;
  for (std::size_t q = 0; q < word.size(); ++q)
    apply_factor(word[q], static_cast<int>(q), out);
}

void pauli_expectations_serial(const std::vector<PauliWord>& words, const State& psi,
                               double* out) {
  State tmp;
  for (std::size_t i = 0; i < words.size(); ++i) {
    apply_pauli_word(words[i], psi, tmp);
    double acc = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k)
      acc += psi[k].real() * tmp[k].real() + psi[k].imag() * tmp[k].imag();
    out[i] = acc;
  }
}

void pauli_expectations(const std::vector<PauliWord>& words, const State& psi, double* out,
                        int threads) {
  if (threads <= 1) {
    pauli_expectations_serial(words, psi, out);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
  {
    State tmp;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(words.size()); ++i) {
      apply_pauli_word(words[i], psi, tmp);
      double acc = 0.0;
      for (std::size_t k = 0; k < psi.size(); ++k)
        acc += psi[k].real() * tmp[k].real() + psi[k].imag() * tmp[k].imag();
      out[i] = acc;
    }
  }
#else
  pauli_expectations_serial(words, psi, out);
#endif
}

namespace {

void jacobian_row(const PauliWord& word, const State& psi, State& tmp, Mat& J, int row) {
  apply_pauli_word(word, psi, tmp);
  const int dim = static_cast<int>(psi.size());
  for (int k = 0; k < dim; ++k) {
    J(row, k) = 2.0 * tmp[k].real();
    J(row, dim + k) = 2.0 * tmp[k].imag();
  }
}

}  // namespace

void pauli_jacobian_serial(const std::vector<PauliWord>& words, const State& psi, Mat& J) {
  State tmp;
  for (std::size_t i = 0; i < words.size(); ++i)
    jacobian_row(words[i], psi, tmp, J, static_cast<int>(i));
}

void pauli_jacobian(const std::vector<PauliWord>& words, const State& psi, Mat& J,
                    int threads) {
  if (threads <= 1) {
    pauli_jacobian_serial(words, psi, J);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
  {
    State tmp;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(words.size()); ++i)
      jacobian_row(words[i], psi, tmp, J, static_cast<int>(i));
  }
#else
  pauli_jacobian_serial(words, psi, J);
#endif
}

}  // namespace nlsplit::kernels
