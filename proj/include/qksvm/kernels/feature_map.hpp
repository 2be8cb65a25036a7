// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qksvm/qsim/gates.hpp"

namespace qksvm::kernels {

// Six data-encoding feature maps, one qubit per feature. The first three are
// IQP-style circuits (Hadamard layer, single-qubit Z rotations, then ZZ
// rotations over an entangling pair set); the Pauli maps are a single layer
// of RX/RY/RZ rotations (PauliZ preceded by a Hadamard layer so the phase is
// observable).
enum class FeatureMapKind { Full, Linear, Circular, PauliX, PauliY, PauliZ };

bool is_iqp(FeatureMapKind kind);

std::string feature_map_name(FeatureMapKind kind);
FeatureMapKind feature_map_from_name(const std::string& name);

struct FeatureMapSpec {
  FeatureMapKind kind = FeatureMapKind::Full;
  int n_features = 1;
  // Multiplier applied to every encoded angle; 1.0 feeds features through
  // unchanged.
  double angle_scale = 1.0;
};

// Entangling pair set of an IQP map: Full is all ordered pairs i<j
// (N(N-1)/2), Linear is the chain (i, i+1) (N-1), Circular is the ring
// (i, (i+1) mod N) (N pairs; the N=2 ring keeps both (0,1) and (1,0), and a
// single qubit has no ring at all).
std::vector<std::pair<int, int>> entangling_pairs(FeatureMapKind kind, int n);

std::vector<qsim::GateOp> build_feature_circuit(const FeatureMapSpec& map,
                                                const Eigen::VectorXd& x);

// Reversed circuit with negated rotation angles (H and CNOT are their own
// inverses).
std::vector<qsim::GateOp> adjoint_circuit(std::vector<qsim::GateOp> ops);

// S(x)|0...0>.
qsim::StateVector feature_state(const FeatureMapSpec& map,
                                const Eigen::VectorXd& x);

}  // namespace qksvm::kernels
