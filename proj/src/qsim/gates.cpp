// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/qsim/gates.hpp"

#include <cmath>

namespace qksvm::qsim {

namespace {

constexpr cd kI{0.0, 1.0};

void check_targets(const StateVector& state, const GateOp& gate) {
  require_config(gate.q1 >= 0 && gate.q1 < state.n_qubits,
                 "gate qubit index out of range");
  if (gate.two_qubit()) {
    require_config(gate.q2 >= 0 && gate.q2 < state.n_qubits,
                   "gate qubit index out of range");
    require_config(gate.q1 != gate.q2, "two-qubit gate needs distinct qubits");
  }
}

struct Mat2 {
  cd u00, u01, u10, u11;
};

Mat2 single_qubit_matrix(const GateOp& gate) {
  const double c = std::cos(gate.angle / 2.0);
  const double s = std::sin(gate.angle / 2.0);
  switch (gate.kind) {
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return {cd{r, 0}, cd{r, 0}, cd{r, 0}, cd{-r, 0}};
    }
    case GateKind::RX:
      return {cd{c, 0}, -kI * s, -kI * s, cd{c, 0}};
    case GateKind::RY:
      return {cd{c, 0}, cd{-s, 0}, cd{s, 0}, cd{c, 0}};
    case GateKind::RZ:
      return {std::exp(-kI * (gate.angle / 2.0)), cd{0, 0}, cd{0, 0},
              std::exp(kI * (gate.angle / 2.0))};
    default:
      throw Error(ErrorKind::Config, "not a single-qubit gate");
  }
}

// Applies a 2x2 matrix on `qubit` over all amplitude pairs.
void apply_single(std::vector<cd>& amps, int n_qubits, int qubit,
                  const Mat2& m) {
  const std::size_t stride = qubit_stride(n_qubits, qubit);
  const std::size_t dim = amps.size();
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = block + off;
      const std::size_t i1 = i0 + stride;
      const cd a0 = amps[i0];
      const cd a1 = amps[i1];
      amps[i0] = m.u00 * a0 + m.u01 * a1;
      amps[i1] = m.u10 * a0 + m.u11 * a1;
    }
  }
}

}  // namespace

Eigen::MatrixXcd gate_unitary(const GateOp& gate) {
  if (!gate.two_qubit()) {
    const Mat2 m = single_qubit_matrix(gate);
    Eigen::MatrixXcd u(2, 2);
    u << m.u00, m.u01, m.u10, m.u11;
    return u;
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  if (gate.kind == GateKind::CNOT) {
    // |q1 q2> order with q1 the control: 00->00, 01->01, 10->11, 11->10.
    u(0, 0) = u(1, 1) = u(3, 2) = u(2, 3) = 1.0;
  } else {
    const cd minus = std::exp(-kI * (gate.angle / 2.0));
    const cd plus = std::exp(kI * (gate.angle / 2.0));
    u(0, 0) = minus;
    u(1, 1) = plus;
    u(2, 2) = plus;
    u(3, 3) = minus;
  }
  return u;
}

void apply_gate_in_place(StateVector& state, const GateOp& gate) {
  check_targets(state, gate);
  switch (gate.kind) {
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY:
      apply_single(state.amps, state.n_qubits, gate.q1,
                   single_qubit_matrix(gate));
      return;
    case GateKind::RZ: {
      const cd minus = std::exp(-kI * (gate.angle / 2.0));
      const cd plus = std::exp(kI * (gate.angle / 2.0));
      const std::size_t stride = qubit_stride(state.n_qubits, gate.q1);
      for (std::size_t q = 0; q < state.amps.size(); ++q) {
        state.amps[q] *= (q & stride) ? plus : minus;
      }
      return;
    }
    case GateKind::RZZ: {
      const cd minus = std::exp(-kI * (gate.angle / 2.0));
      const cd plus = std::exp(kI * (gate.angle / 2.0));
      const std::size_t s1 = qubit_stride(state.n_qubits, gate.q1);
      const std::size_t s2 = qubit_stride(state.n_qubits, gate.q2);
      for (std::size_t q = 0; q < state.amps.size(); ++q) {
        const bool b1 = q & s1;
        const bool b2 = q & s2;
        state.amps[q] *= (b1 == b2) ? minus : plus;
      }
      return;
    }
    case GateKind::CNOT: {
      const std::size_t sc = qubit_stride(state.n_qubits, gate.q1);
      const std::size_t st = qubit_stride(state.n_qubits, gate.q2);
      for (std::size_t q = 0; q < state.amps.size(); ++q) {
        if ((q & sc) && !(q & st)) {
          std::swap(state.amps[q], state.amps[q | st]);
        }
      }
      return;
    }
  }
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  apply_gate_in_place(state, gate);
  return state;
}

StateVector apply_hadamard_layer(StateVector state) {
  for (int q = 0; q < state.n_qubits; ++q) {
    apply_gate_in_place(state, GateOp::h(q));
  }
  return state;
}

StateVector apply_circuit(StateVector state, std::span<const GateOp> ops) {
  for (const GateOp& gate : ops) {
    apply_gate_in_place(state, gate);
  }
  return state;
}

double overlap_probability(const StateVector& a, const StateVector& b) {
  require_config(a.n_qubits == b.n_qubits,
                 "overlap needs equal qubit counts");
  cd inner{0.0, 0.0};
  for (std::size_t q = 0; q < a.amps.size(); ++q) {
    inner += std::conj(a.amps[q]) * b.amps[q];
  }
  return std::norm(inner);
}

}  // namespace qksvm::qsim
