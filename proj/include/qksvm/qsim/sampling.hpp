// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qksvm/qsim/state.hpp"
#include "qksvm/util/rng.hpp"

namespace qksvm::qsim {

// Computational-basis probabilities: |amp|^2, or the diagonal of rho. Tiny
// negative diagonal entries (> -1e-9) are clamped to zero.
std::vector<double> basis_probabilities(const StateVector& state);
std::vector<double> basis_probabilities(const DensityMatrix& dm);

// Draws one basis index from a probability vector by inverse CDF.
std::size_t sample_basis_index(const std::vector<double>& probs, Rng& rng);

// Measured bitstring "q0 q1 ... q_{N-1}" (qubit 0 first).
std::string sample_bitstring(const StateVector& state, Rng& rng);
std::string sample_bitstring(const DensityMatrix& dm, Rng& rng);

std::string index_to_bitstring(std::size_t index, int n_qubits);

}  // namespace qksvm::qsim
