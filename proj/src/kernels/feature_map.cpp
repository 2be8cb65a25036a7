// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/kernels/feature_map.hpp"

#include <algorithm>

#include "qksvm/util/errors.hpp"

namespace qksvm::kernels {

using qsim::GateOp;

bool is_iqp(FeatureMapKind kind) {
  return kind == FeatureMapKind::Full || kind == FeatureMapKind::Linear ||
         kind == FeatureMapKind::Circular;
}

std::string feature_map_name(FeatureMapKind kind) {
  switch (kind) {
    case FeatureMapKind::Full: return "full";
    case FeatureMapKind::Linear: return "linear";
    case FeatureMapKind::Circular: return "circular";
    case FeatureMapKind::PauliX: return "pauli-x";
    case FeatureMapKind::PauliY: return "pauli-y";
    case FeatureMapKind::PauliZ: return "pauli-z";
  }
  return "?";
}

FeatureMapKind feature_map_from_name(const std::string& name) {
  for (FeatureMapKind kind :
       {FeatureMapKind::Full, FeatureMapKind::Linear, FeatureMapKind::Circular,
        FeatureMapKind::PauliX, FeatureMapKind::PauliY,
        FeatureMapKind::PauliZ}) {
    if (feature_map_name(kind) == name) return kind;
  }
  throw Error(ErrorKind::Config, "unknown feature map: " + name);
}

std::vector<std::pair<int, int>> entangling_pairs(FeatureMapKind kind, int n) {
  std::vector<std::pair<int, int>> pairs;
  switch (kind) {
    case FeatureMapKind::Full:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
      break;
    case FeatureMapKind::Linear:
      for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
      break;
    case FeatureMapKind::Circular:
      if (n >= 2) {
        for (int i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
      }
      break;
    default:
      break;  // Pauli maps do not entangle
  }
  return pairs;
}

std::vector<GateOp> build_feature_circuit(const FeatureMapSpec& map,
                                          const Eigen::VectorXd& x) {
  require_config(map.n_features >= 1, "feature map needs at least 1 feature");
  require_config(x.size() == map.n_features,
                 "feature vector length " + std::to_string(x.size()) +
                     " does not match map width " +
                     std::to_string(map.n_features));
  const int n = map.n_features;
  const double scale = map.angle_scale;
  std::vector<GateOp> ops;
  if (is_iqp(map.kind)) {
    for (int q = 0; q < n; ++q) ops.push_back(GateOp::h(q));
    for (int q = 0; q < n; ++q) ops.push_back(GateOp::rz(q, scale * x[q]));
    for (const auto& [a, b] : entangling_pairs(map.kind, n)) {
      ops.push_back(GateOp::rzz(a, b, scale * x[a] * x[b]));
    }
    return ops;
  }
  switch (map.kind) {
    case FeatureMapKind::PauliX:
      for (int q = 0; q < n; ++q) ops.push_back(GateOp::rx(q, scale * x[q]));
      break;
    case FeatureMapKind::PauliY:
      for (int q = 0; q < n; ++q) ops.push_back(GateOp::ry(q, scale * x[q]));
      break;
    case FeatureMapKind::PauliZ:
      for (int q = 0; q < n; ++q) {
        ops.push_back(GateOp::h(q));
        ops.push_back(GateOp::rz(q, scale * x[q]));
      }
      break;
    default:
      break;
  }
  return ops;
}

std::vector<GateOp> adjoint_circuit(std::vector<GateOp> ops) {
  std::reverse(ops.begin(), ops.end());
  for (GateOp& op : ops) op.angle = -op.angle;
  return ops;
}

qsim::StateVector feature_state(const FeatureMapSpec& map,
                                const Eigen::VectorXd& x) {
  const auto ops = build_feature_circuit(map, x);
  return qsim::apply_circuit(qsim::StateVector::zero_state(map.n_features),
                             ops);
}

}  // namespace qksvm::kernels
