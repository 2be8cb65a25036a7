// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/qsim/sampling.hpp"

#include <cmath>

namespace qksvm::qsim {

namespace {

void clamp_probabilities(std::vector<double>& probs) {
  for (double& p : probs) {
    require_numerical(p > -1e-9, "negative basis probability");
    if (p < 0.0) p = 0.0;
  }
}

}  // namespace

std::vector<double> basis_probabilities(const StateVector& state) {
  std::vector<double> probs(state.dim());
  for (std::size_t q = 0; q < probs.size(); ++q) {
    probs[q] = std::norm(state.amps[q]);
  }
  return probs;
}

std::vector<double> basis_probabilities(const DensityMatrix& dm) {
  std::vector<double> probs(dm.dim());
  for (std::size_t q = 0; q < probs.size(); ++q) {
    probs[q] = dm.mat(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q))
                   .real();
  }
  clamp_probabilities(probs);
  return probs;
}

std::size_t sample_basis_index(const std::vector<double>& probs, Rng& rng) {
  const double u = rng.uniform01();
  double cum = 0.0;
  for (std::size_t q = 0; q < probs.size(); ++q) {
    cum += probs[q];
    if (u < cum) return q;
  }
  return probs.size() - 1;  // guard against cum < 1 from rounding
}

std::string index_to_bitstring(std::size_t index, int n_qubits) {
  std::string bits(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (index & qubit_stride(n_qubits, q)) bits[static_cast<std::size_t>(q)] = '1';
  }
  return bits;
}

std::string sample_bitstring(const StateVector& state, Rng& rng) {
  return index_to_bitstring(sample_basis_index(basis_probabilities(state), rng),
                            state.n_qubits);
}

std::string sample_bitstring(const DensityMatrix& dm, Rng& rng) {
  return index_to_bitstring(sample_basis_index(basis_probabilities(dm), rng),
                            dm.n_qubits);
}

}  // namespace qksvm::qsim
