// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "qksvm/qsim/state.hpp"

namespace qksvm::qsim {

enum class GateKind { H, RX, RY, RZ, RZZ, CNOT };

// Rotation convention: R_a(theta) = cos(theta/2) I - i sin(theta/2) sigma_a,
// and RZZ(theta) = diag(e^{-i theta/2}, e^{+i theta/2}, e^{+i theta/2},
// e^{-i theta/2}) in the |q1 q2> ordering. RZ's global phase on |0> is kept
// as the matrix gives it; every kernel in this library consumes |overlap|^2,
// which is global-phase invariant.
struct GateOp {
  GateKind kind;
  int q1 = 0;
  int q2 = -1;
  double angle = 0.0;

  static GateOp h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static GateOp rx(int q, double theta) { return {GateKind::RX, q, -1, theta}; }
  static GateOp ry(int q, double theta) { return {GateKind::RY, q, -1, theta}; }
  static GateOp rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
  static GateOp rzz(int a, int b, double theta) {
    return {GateKind::RZZ, a, b, theta};
  }
  static GateOp cnot(int control, int target) {
    return {GateKind::CNOT, control, target, 0.0};
  }

  bool two_qubit() const {
    return kind == GateKind::RZZ || kind == GateKind::CNOT;
  }
};

// Dense unitary of the gate: 2x2, or 4x4 in |q1 q2> = (00, 01, 10, 11) order.
Eigen::MatrixXcd gate_unitary(const GateOp& gate);

void apply_gate_in_place(StateVector& state, const GateOp& gate);

StateVector apply_gate(StateVector state, const GateOp& gate);

// H on every qubit.
StateVector apply_hadamard_layer(StateVector state);

// Gates applied left to right.
StateVector apply_circuit(StateVector state, std::span<const GateOp> ops);

// |<a|b>|^2.
double overlap_probability(const StateVector& a, const StateVector& b);

}  // namespace qksvm::qsim
