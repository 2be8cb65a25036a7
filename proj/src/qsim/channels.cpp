// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/qsim/channels.hpp"

#include <cmath>

namespace qksvm::qsim {

namespace {

constexpr cd kI{0.0, 1.0};

// M <- G M, with G a 2x2 matrix acting on `qubit`. Column-wise so Eigen can
// vectorize each span.
void left_apply_1q(Eigen::MatrixXcd& m, int n_qubits, int qubit,
                   const Eigen::Matrix2cd& g) {
  const Eigen::Index stride =
      static_cast<Eigen::Index>(qubit_stride(n_qubits, qubit));
  const Eigen::Index dim = m.rows();
  Eigen::RowVectorXcd r0(m.cols());
  for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index i0 = block + off;
      const Eigen::Index i1 = i0 + stride;
      r0 = m.row(i0);
      m.row(i0) = g(0, 0) * r0 + g(0, 1) * m.row(i1);
      m.row(i1) = g(1, 0) * r0 + g(1, 1) * m.row(i1);
    }
  }
}

// M <- M G^dag.
void right_apply_1q_dag(Eigen::MatrixXcd& m, int n_qubits, int qubit,
                        const Eigen::Matrix2cd& g) {
  const Eigen::Index stride =
      static_cast<Eigen::Index>(qubit_stride(n_qubits, qubit));
  const Eigen::Index dim = m.cols();
  Eigen::VectorXcd c0(m.rows());
  for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index i0 = block + off;
      const Eigen::Index i1 = i0 + stride;
      c0 = m.col(i0);
      m.col(i0) = std::conj(g(0, 0)) * c0 + std::conj(g(0, 1)) * m.col(i1);
      m.col(i1) = std::conj(g(1, 0)) * c0 + std::conj(g(1, 1)) * m.col(i1);
    }
  }
}

// Basis phase of a diagonal gate at index q.
cd diagonal_phase(const GateOp& gate, int n_qubits, std::size_t q) {
  const cd minus = std::exp(-kI * (gate.angle / 2.0));
  const cd plus = std::exp(kI * (gate.angle / 2.0));
  if (gate.kind == GateKind::RZ) {
    return (q & qubit_stride(n_qubits, gate.q1)) ? plus : minus;
  }
  const bool b1 = q & qubit_stride(n_qubits, gate.q1);
  const bool b2 = q & qubit_stride(n_qubits, gate.q2);
  return (b1 == b2) ? minus : plus;
}

std::size_t cnot_image(const GateOp& gate, int n_qubits, std::size_t q) {
  const std::size_t sc = qubit_stride(n_qubits, gate.q1);
  const std::size_t st = qubit_stride(n_qubits, gate.q2);
  return (q & sc) ? (q ^ st) : q;
}

void apply_gate_density(Eigen::MatrixXcd& m, int n_qubits,
                        const GateOp& gate) {
  switch (gate.kind) {
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY: {
      const Eigen::Matrix2cd g = gate_unitary(gate);
      left_apply_1q(m, n_qubits, gate.q1, g);
      right_apply_1q_dag(m, n_qubits, gate.q1, g);
      return;
    }
    case GateKind::RZ:
    case GateKind::RZZ: {
      // Diagonal: rho_{qc} -> phase(q) conj(phase(c)) rho_{qc}.
      const std::size_t dim = static_cast<std::size_t>(m.rows());
      std::vector<cd> phases(dim);
      for (std::size_t q = 0; q < dim; ++q) {
        phases[q] = diagonal_phase(gate, n_qubits, q);
      }
      for (std::size_t c = 0; c < dim; ++c) {
        const cd pc = std::conj(phases[c]);
        for (std::size_t r = 0; r < dim; ++r) {
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *=
              phases[r] * pc;
        }
      }
      return;
    }
    case GateKind::CNOT: {
      // Permutation: rho -> P rho P^T.
      const std::size_t dim = static_cast<std::size_t>(m.rows());
      Eigen::MatrixXcd out(m.rows(), m.cols());
      for (std::size_t c = 0; c < dim; ++c) {
        const std::size_t ic = cnot_image(gate, n_qubits, c);
        for (std::size_t r = 0; r < dim; ++r) {
          out(static_cast<Eigen::Index>(cnot_image(gate, n_qubits, r)),
              static_cast<Eigen::Index>(ic)) =
              m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
      }
      m = std::move(out);
      return;
    }
  }
}

}  // namespace

KrausSet depolarizing_kraus(double p) {
  require_config(p >= 0.0 && p <= 1.0,
                 "depolarizing probability must lie in [0, 1]");
  const double a = std::sqrt(1.0 - p);
  const double b = std::sqrt(p / 3.0);
  Eigen::Matrix2cd m0, mx, my, mz;
  m0 << a, 0, 0, a;
  mx << 0, b, b, 0;
  my << 0, -b * kI, b * kI, 0;
  mz << b, 0, 0, -b;
  return {m0, mx, my, mz};
}

DensityMatrix apply_channel(DensityMatrix dm, const KrausSet& kraus,
                            int qubit) {
  require_config(qubit >= 0 && qubit < dm.n_qubits,
                 "channel qubit index out of range");
  Eigen::Matrix2cd completeness = Eigen::Matrix2cd::Zero();
  for (const auto& k : kraus) completeness += k.adjoint() * k;
  require_config((completeness - Eigen::Matrix2cd::Identity()).norm() < 1e-10,
                 "Kraus set is not trace preserving");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dm.mat.rows(), dm.mat.cols());
  for (const auto& k : kraus) {
    Eigen::MatrixXcd term = dm.mat;
    left_apply_1q(term, dm.n_qubits, qubit, k);
    right_apply_1q_dag(term, dm.n_qubits, qubit, k);
    acc += term;
  }
  dm.mat = std::move(acc);
  return dm;
}

DensityMatrix apply_depolarizing_all(DensityMatrix dm, double p) {
  const KrausSet kraus = depolarizing_kraus(p);
  for (int q = 0; q < dm.n_qubits; ++q) {
    dm = apply_channel(std::move(dm), kraus, q);
  }
  return dm;
}

DensityMatrix evolve_density(DensityMatrix dm, std::span<const GateOp> ops) {
  for (const GateOp& gate : ops) {
    require_config(gate.q1 >= 0 && gate.q1 < dm.n_qubits &&
                       (!gate.two_qubit() ||
                        (gate.q2 >= 0 && gate.q2 < dm.n_qubits &&
                         gate.q1 != gate.q2)),
                   "gate qubit index out of range");
    apply_gate_density(dm.mat, dm.n_qubits, gate);
  }
  return dm;
}

double prob_all_zeros(const DensityMatrix& dm) {
  double p = dm.mat(0, 0).real();
  require_numerical(p > -1e-9, "all-zeros probability is negative");
  if (p < 0.0) p = 0.0;
  if (p > 1.0) {
    require_numerical(p < 1.0 + 1e-9, "all-zeros probability exceeds 1");
    p = 1.0;
  }
  return p;
}

}  // namespace qksvm::qsim
