// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "qksvm/kernels/feature_map.hpp"
#include "qksvm/util/rng.hpp"

namespace qksvm::kernels {

enum class ClassicalKind { Linear, Polynomial, Sigmoid, Gaussian };

std::string classical_name(ClassicalKind kind);
ClassicalKind classical_from_name(const std::string& name);

struct ClassicalParams {
  double kappa = 1.0;  // > 0
  int degree = 3;      // >= 1, polynomial only
  double offset = -1.0;  // < 0, sigmoid only
};

struct QuantumFamily {
  FeatureMapSpec map;
};

struct ClassicalFamily {
  ClassicalKind kind = ClassicalKind::Linear;
  ClassicalParams params;
};

// Everything needed to evaluate one kernel: the family, the estimation mode
// (exact, shot-sampled, or depolarizing-noise), and the RNG seed for
// shot-based entries.
struct KernelSpec {
  std::variant<QuantumFamily, ClassicalFamily> family;
  double noise_p = 0.0;      // depolarizing probability; quantum only
  std::int64_t shots = 0;    // 0 = exact expectation; >= 1 = sampled
  std::uint64_t seed = 0;

  bool is_quantum() const {
    return std::holds_alternative<QuantumFamily>(family);
  }
  const FeatureMapSpec& map() const {
    return std::get<QuantumFamily>(family).map;
  }
  const ClassicalFamily& classical() const {
    return std::get<ClassicalFamily>(family);
  }

  void validate() const;

  // Stable human-readable identity, also the cache key material.
  std::string id() const;

  static KernelSpec quantum(FeatureMapKind kind, int n_features,
                            double angle_scale = 1.0);
  static KernelSpec classical_kernel_spec(ClassicalKind kind,
                                          ClassicalParams params = {});
};

// |<phi(x_i)|phi(x_j)>|^2 via two pure-state simulations.
double quantum_kernel_exact(const FeatureMapSpec& map,
                            const Eigen::VectorXd& x_i,
                            const Eigen::VectorXd& x_j);

// The Pauli-family closed form prod_k cos^2((x_i[k]-x_j[k])/2), against which
// all three Pauli maps are equivalent.
double pauli_kernel_closed_form(const Eigen::VectorXd& x_i,
                                const Eigen::VectorXd& x_j);

// Density-matrix path: start from |0..0><0..0|, apply S(x_i), depolarize all
// qubits, apply S(x_j)^dag, depolarize all qubits, read the all-zeros
// probability.
double noisy_quantum_kernel(const FeatureMapSpec& map,
                            const Eigen::VectorXd& x_i,
                            const Eigen::VectorXd& x_j, double p);

// Closed form of the noisy Pauli-family kernel:
// prod_k [ (1-4p/3)^2 cos^2(dk/2) + (2-4p/3)(2p/3) ].
double noisy_pauli_closed_form(const Eigen::VectorXd& x_i,
                               const Eigen::VectorXd& x_j, double p);

// Frequency of the all-zeros outcome over Z measurement shots of
// S(x_j)^dag S(x_i)|0..0>.
double estimate_kernel_shots(const FeatureMapSpec& map,
                             const Eigen::VectorXd& x_i,
                             const Eigen::VectorXd& x_j, std::int64_t shots,
                             Rng& rng);

double classical_kernel(ClassicalKind kind, const Eigen::VectorXd& x_i,
                        const Eigen::VectorXd& x_j,
                        const ClassicalParams& params);

// Single-entry dispatch. Shot-sampled entries draw from the stream
// (spec.seed, row, col) so Gram assembly is schedule independent.
double kernel_value(const KernelSpec& spec, const Eigen::VectorXd& x_i,
                    const Eigen::VectorXd& x_j, std::uint64_t row = 0,
                    std::uint64_t col = 0);

}  // namespace qksvm::kernels
