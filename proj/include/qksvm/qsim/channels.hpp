// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "qksvm/qsim/gates.hpp"
#include "qksvm/qsim/state.hpp"

namespace qksvm::qsim {

using KrausSet = std::vector<Eigen::Matrix2cd>;

// Single-qubit depolarizing channel N(rho) = (1-p) rho + (p/3)(X rho X +
// Y rho Y + Z rho Z), as the four Kraus operators {sqrt(1-p) I,
// sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}.
KrausSet depolarizing_kraus(double p);

// rho -> sum_k M_k rho M_k^dag on the target qubit. The set must be trace
// preserving: sum_k M_k^dag M_k = I within 1e-10.
DensityMatrix apply_channel(DensityMatrix dm, const KrausSet& kraus,
                            int qubit);

// Depolarizing channel applied to every qubit in sequence.
DensityMatrix apply_depolarizing_all(DensityMatrix dm, double p);

// rho -> U rho U^dag for the circuit unitary U.
DensityMatrix evolve_density(DensityMatrix dm, std::span<const GateOp> ops);

// <0...0| rho |0...0>, clamped against rounding (negatives beyond -1e-9 are
// a numerical failure).
double prob_all_zeros(const DensityMatrix& dm);

}  // namespace qksvm::qsim
