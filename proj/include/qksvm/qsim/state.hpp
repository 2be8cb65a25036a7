// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qksvm/util/errors.hpp"

namespace qksvm::qsim {

using cd = std::complex<double>;

inline constexpr int kMaxQubits = 12;

// Basis convention: the basis state |q_0 q_1 ... q_{N-1}> is stored at index
// q = q_{N-1} * 2^0 + ... + q_0 * 2^(N-1). Qubit 0 is the most significant
// bit, so qubit i has bit stride 2^(N-1-i).
inline std::size_t qubit_stride(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

inline void check_qubit_count(int n_qubits) {
  require_config(n_qubits >= 1 && n_qubits <= kMaxQubits,
                 "qubit count must be in 1..12, got " +
                     std::to_string(n_qubits));
}

struct StateVector {
  int n_qubits = 0;
  std::vector<cd> amps;

  static StateVector zero_state(int n_qubits) {
    check_qubit_count(n_qubits);
    StateVector s;
    s.n_qubits = n_qubits;
    s.amps.assign(std::size_t{1} << n_qubits, cd{0.0, 0.0});
    s.amps[0] = cd{1.0, 0.0};
    return s;
  }

  std::size_t dim() const { return amps.size(); }

  double norm_sq() const {
    double acc = 0.0;
    for (const cd& a : amps) acc += std::norm(a);
    return acc;
  }
};

struct DensityMatrix {
  int n_qubits = 0;
  Eigen::MatrixXcd mat;

  static DensityMatrix zero_state(int n_qubits) {
    check_qubit_count(n_qubits);
    DensityMatrix d;
    d.n_qubits = n_qubits;
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    d.mat = Eigen::MatrixXcd::Zero(dim, dim);
    d.mat(0, 0) = cd{1.0, 0.0};
    return d;
  }

  static DensityMatrix from_pure(const StateVector& s) {
    DensityMatrix d;
    d.n_qubits = s.n_qubits;
    const Eigen::Index dim = static_cast<Eigen::Index>(s.dim());
    Eigen::Map<const Eigen::VectorXcd> v(s.amps.data(), dim);
    d.mat = v * v.adjoint();
    return d;
  }

  std::size_t dim() const { return static_cast<std::size_t>(mat.rows()); }

  double trace_real() const { return mat.trace().real(); }

  // Tr[rho^2]; for Hermitian rho this is the squared Frobenius norm.
  double purity() const { return mat.squaredNorm(); }
};

}  // namespace qksvm::qsim
