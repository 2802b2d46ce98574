#include "nlsplit/problems/tomography.hpp"

#include <cmath>
#include <numeric>

#include "nlsplit/rng.hpp"

namespace nlsplit::problems {

using kernels::Cplx;
using kernels::PauliWord;
using kernels::State;

Vec state_to_real(const State& s) {
  const int d = static_cast<int>(s.size());
  Vec u(2 * d);
  for (int k = 0; k < d; ++k) {
    u[k] = s[k].real();
    u[d + k] = s[k].imag();
  }
  return u;
}

State real_to_state(const Vec& u) {
  const int d = static_cast<int>(u.size()) / 2;
  State s(d);
  for (int k = 0; k < d; ++k) s[k] = Cplx(u[k], u[d + k]);
  return s;
}

namespace {

State random_unit_state(int n_qubits, Rng& rng) {
  const int d = 1 << n_qubits;
  State s(d);
  double nrm2 = 0.0;
  for (int k = 0; k < d; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    s[k] = Cplx(re, im);
    nrm2 += re * re + im * im;
  }
  const double inv = 1.0 / std::sqrt(nrm2);
  for (auto& c : s) c *= inv;
  return s;
}

PauliWord word_from_index(std::uint64_t idx, int n_qubits) {
  PauliWord w(n_qubits);
  for (int t = 0; t < n_qubits; ++t) {
    w[t] = static_cast<std::uint8_t>(idx & 3);
    idx >>= 2;
  }
  return w;
}

}  // namespace

TomographyProblem tomography_build(int n_qubits, int n_operators, std::uint64_t seed,
                                   int threads) {
  const std::uint64_t total = std::uint64_t{1} << (2 * n_qubits);
  if (n_operators < 1 || static_cast<std::uint64_t>(n_operators) > total)
    throw TooManyOperators("n_operators must be in [1, 4^n_qubits]");

  TomographyProblem p;
  p.n_qubits = n_qubits;
  p.seed = seed;
  p.threads = threads;

  Rng rng(seed);
  p.prepared_state = random_unit_state(n_qubits, rng);

  // Distinct word indices by partial Fisher-Yates over [0, 4^n).
  std::vector<std::uint64_t> pool(total);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  p.words.reserve(n_operators);
  for (int i = 0; i < n_operators; ++i) {
    const std::uint64_t j = i + rng.below(total - i);
    std::swap(pool[i], pool[j]);
    p.words.push_back(word_from_index(pool[i], n_qubits));
  }

  p.targets.resize(n_operators);
  kernels::pauli_expectations(p.words, p.prepared_state, p.targets.data(), threads);
  return p;
}

splitting::ResidualProblem tomography_residual(const TomographyProblem& p) {
  splitting::ResidualProblem rp;
  rp.out_dim = static_cast<int>(p.words.size());
  rp.in_dim = 2 * (1 << p.n_qubits);
  const auto words = p.words;  // shared copy for the closures
  const Vec targets = p.targets;
  const int threads = p.threads;

  rp.residual = [words, targets, threads](const Vec& u) {
    const State psi = real_to_state(u);
    Vec r(words.size());
    kernels::pauli_expectations(words, psi, r.data(), threads);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= targets[i];
    return r;
  };
  rp.jacobian = [words, threads](const Vec& u) {
    const State psi = real_to_state(u);
    Mat J(static_cast<int>(words.size()), static_cast<int>(u.size()));
    kernels::pauli_jacobian(words, psi, J, threads);
    return J;
  };
  return rp;
}

double fidelity(const State& a, const State& b) {
  if (a.size() != b.size()) throw DimensionMismatch("fidelity: state sizes differ");
  double na = 0.0, nb = 0.0;
  Cplx ov(0.0, 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    na += std::norm(a[k]);
    nb += std::norm(b[k]);
    ov += std::conj(a[k]) * b[k];
  }
  if (na <= 0.0 || nb <= 0.0) throw ZeroState("fidelity of a zero state");
  return std::norm(ov) / (na * nb);
}

Vec random_state_real(int n_qubits, std::uint64_t seed) {
  Rng rng(seed);
  return state_to_real(random_unit_state(n_qubits, rng));
}

}  // namespace nlsplit::problems
