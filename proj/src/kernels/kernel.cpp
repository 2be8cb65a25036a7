// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/kernels/kernel.hpp"

#include <cmath>
#include <sstream>

#include "qksvm/qsim/channels.hpp"
#include "qksvm/qsim/sampling.hpp"
#include "qksvm/util/errors.hpp"

namespace qksvm::kernels {

std::string classical_name(ClassicalKind kind) {
  switch (kind) {
    case ClassicalKind::Linear: return "linear";
    case ClassicalKind::Polynomial: return "polynomial";
    case ClassicalKind::Sigmoid: return "sigmoid";
    case ClassicalKind::Gaussian: return "gaussian";
  }
  return "?";
}

ClassicalKind classical_from_name(const std::string& name) {
  for (ClassicalKind kind :
       {ClassicalKind::Linear, ClassicalKind::Polynomial,
        ClassicalKind::Sigmoid, ClassicalKind::Gaussian}) {
    if (classical_name(kind) == name) return kind;
  }
  throw Error(ErrorKind::Config, "unknown classical kernel: " + name);
}

void KernelSpec::validate() const {
  require_config(noise_p >= 0.0 && noise_p <= 1.0,
                 "noise probability must lie in [0, 1]");
  require_config(shots >= 0, "shot count must be >= 0");
  if (!is_quantum()) {
    require_config(noise_p == 0.0,
                   "depolarizing noise applies to quantum kernels only");
    require_config(shots == 0,
                   "shot sampling applies to quantum kernels only");
    const auto& c = classical();
    require_config(c.params.kappa > 0.0, "kernel scale kappa must be > 0");
    if (c.kind == ClassicalKind::Polynomial) {
      require_config(c.params.degree >= 1, "polynomial degree must be >= 1");
    }
    if (c.kind == ClassicalKind::Sigmoid) {
      require_config(c.params.offset < 0.0, "sigmoid offset must be < 0");
    }
  } else {
    require_config(map().n_features >= 1 &&
                       map().n_features <= qsim::kMaxQubits,
                   "quantum kernel width must be in 1..12 qubits");
    require_config(noise_p == 0.0 || shots == 0,
                   "noisy kernels are exact-expectation only; combining "
                   "noise with shot sampling is unsupported");
  }
}

std::string KernelSpec::id() const {
  std::ostringstream out;
  if (is_quantum()) {
    out << "quantum:" << feature_map_name(map().kind)
        << ":n=" << map().n_features;
    if (map().angle_scale != 1.0) out << ":scale=" << map().angle_scale;
    if (noise_p > 0.0) out << ":noise=" << noise_p;
  } else {
    const auto& c = classical();
    out << "classical:" << classical_name(c.kind) << ":kappa=" << c.params.kappa;
    if (c.kind == ClassicalKind::Polynomial) out << ":d=" << c.params.degree;
    if (c.kind == ClassicalKind::Sigmoid) out << ":c=" << c.params.offset;
  }
  if (shots > 0) out << ":shots=" << shots << ":seed=" << seed;
  return out.str();
}

KernelSpec KernelSpec::quantum(FeatureMapKind kind, int n_features,
                               double angle_scale) {
  KernelSpec spec;
  spec.family = QuantumFamily{FeatureMapSpec{kind, n_features, angle_scale}};
  return spec;
}

KernelSpec KernelSpec::classical_kernel_spec(ClassicalKind kind,
                                             ClassicalParams params) {
  KernelSpec spec;
  spec.family = ClassicalFamily{kind, params};
  return spec;
}

double quantum_kernel_exact(const FeatureMapSpec& map,
                            const Eigen::VectorXd& x_i,
                            const Eigen::VectorXd& x_j) {
  return qsim::overlap_probability(feature_state(map, x_i),
                                   feature_state(map, x_j));
}

double pauli_kernel_closed_form(const Eigen::VectorXd& x_i,
                                const Eigen::VectorXd& x_j) {
  require_config(x_i.size() == x_j.size(), "kernel inputs differ in length");
  double value = 1.0;
  for (Eigen::Index k = 0; k < x_i.size(); ++k) {
    const double c = std::cos((x_i[k] - x_j[k]) / 2.0);
    value *= c * c;
  }
  return value;
}

double noisy_quantum_kernel(const FeatureMapSpec& map,
                            const Eigen::VectorXd& x_i,
                            const Eigen::VectorXd& x_j, double p) {
  require_config(p >= 0.0 && p <= 1.0,
                 "noise probability must lie in [0, 1]");
  auto dm = qsim::DensityMatrix::zero_state(map.n_features);
  dm = qsim::evolve_density(std::move(dm), build_feature_circuit(map, x_i));
  dm = qsim::apply_depolarizing_all(std::move(dm), p);
  dm = qsim::evolve_density(std::move(dm),
                            adjoint_circuit(build_feature_circuit(map, x_j)));
  dm = qsim::apply_depolarizing_all(std::move(dm), p);
  return qsim::prob_all_zeros(dm);
}

double noisy_pauli_closed_form(const Eigen::VectorXd& x_i,
                               const Eigen::VectorXd& x_j, double p) {
  require_config(x_i.size() == x_j.size(), "kernel inputs differ in length");
  require_config(p >= 0.0 && p <= 1.0,
                 "noise probability must lie in [0, 1]");
  const double shrink = 1.0 - 4.0 * p / 3.0;
  const double floor_term = (2.0 - 4.0 * p / 3.0) * (2.0 * p / 3.0);
  double value = 1.0;
  for (Eigen::Index k = 0; k < x_i.size(); ++k) {
    const double c = std::cos((x_i[k] - x_j[k]) / 2.0);
    value *= shrink * shrink * c * c + floor_term;
  }
  return value;
}

double estimate_kernel_shots(const FeatureMapSpec& map,
                             const Eigen::VectorXd& x_i,
                             const Eigen::VectorXd& x_j, std::int64_t shots,
                             Rng& rng) {
  require_config(shots >= 1, "shot count must be >= 1");
  auto ops = build_feature_circuit(map, x_i);
  const auto undo = adjoint_circuit(build_feature_circuit(map, x_j));
  ops.insert(ops.end(), undo.begin(), undo.end());
  const auto state =
      qsim::apply_circuit(qsim::StateVector::zero_state(map.n_features), ops);
  // The estimator only needs the all-zeros count. Index 0 owns the CDF
  // interval [0, p0), so testing u < p0 is exactly inverse-CDF bitstring
  // sampling restricted to that bucket.
  const double p0 = std::norm(state.amps[0]);
  std::int64_t zeros = 0;
  for (std::int64_t z = 0; z < shots; ++z) {
    if (rng.uniform01() < p0) ++zeros;
  }
  return static_cast<double>(zeros) / static_cast<double>(shots);
}

double classical_kernel(ClassicalKind kind, const Eigen::VectorXd& x_i,
                        const Eigen::VectorXd& x_j,
                        const ClassicalParams& params) {
  require_config(x_i.size() == x_j.size(), "kernel inputs differ in length");
  require_config(params.kappa > 0.0, "kernel scale kappa must be > 0");
  switch (kind) {
    case ClassicalKind::Linear:
      return x_i.dot(x_j);
    case ClassicalKind::Polynomial:
      require_config(params.degree >= 1, "polynomial degree must be >= 1");
      return std::pow(params.kappa * x_i.dot(x_j), params.degree);
    case ClassicalKind::Sigmoid:
      require_config(params.offset < 0.0, "sigmoid offset must be < 0");
      return std::tanh(params.kappa * x_i.dot(x_j) + params.offset);
    case ClassicalKind::Gaussian:
      return std::exp(-params.kappa * (x_i - x_j).squaredNorm());
  }
  throw Error(ErrorKind::Config, "unknown classical kernel kind");
}

double kernel_value(const KernelSpec& spec, const Eigen::VectorXd& x_i,
                    const Eigen::VectorXd& x_j, std::uint64_t row,
                    std::uint64_t col) {
  if (!spec.is_quantum()) {
    const auto& c = spec.classical();
    return classical_kernel(c.kind, x_i, x_j, c.params);
  }
  if (spec.noise_p > 0.0) {
    return noisy_quantum_kernel(spec.map(), x_i, x_j, spec.noise_p);
  }
  if (spec.shots > 0) {
    Rng rng = Rng::stream(spec.seed, {row, col});
    return estimate_kernel_shots(spec.map(), x_i, x_j, spec.shots, rng);
  }
  return quantum_kernel_exact(spec.map(), x_i, x_j);
}

}  // namespace qksvm::kernels
