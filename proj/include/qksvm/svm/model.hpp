// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qksvm::svm {

// Multipliers below this are treated as zero when collecting support vectors.
inline constexpr double kSupportThreshold = 1e-8;

// One binary one-vs-rest classifier. `y` holds the +/-1 relabeling the model
// was trained with, so the decision function is self-contained:
// f(x) = sum_{i in support} alpha_i y_i k(x_i, x) + bias.
struct BinaryModel {
  Eigen::VectorXd alphas;
  Eigen::VectorXd y;
  double bias = 0.0;
  std::vector<int> support_indices;
  double C = 1.0;
  // Single-class training fold: the model is the constant classifier f = -1.
  bool degenerate = false;
  bool converged = true;
};

double binary_decision(const BinaryModel& model, const Eigen::VectorXd& k_row);

// The joint multiclass dual: alphas is m x l with alphas(i, y_i - 1) pinned
// to zero, biases has length l.
struct JointModel {
  Eigen::MatrixXd alphas;
  Eigen::VectorXd biases;
  double C = 1.0;
  std::vector<int> labels;  // training labels in 1..l
  bool converged = true;
};

enum class Strategy { OneVsAll, CrammerSinger };

std::string strategy_name(Strategy strategy);
Strategy strategy_from_name(const std::string& name);

struct MulticlassModel {
  Strategy strategy = Strategy::OneVsAll;
  int n_classes = 0;
  std::vector<BinaryModel> binary;  // one per class when OneVsAll
  JointModel joint;                 // populated when CrammerSinger
  // Identity of the training rows the kernel columns must line up with.
  std::uint64_t training_digest = 0;
  std::vector<std::string> warnings;
};

// Length-l decision values for one test point. k_row holds the kernel values
// between the test point and every training point, in training order.
Eigen::VectorXd decision_values(const MulticlassModel& model,
                                const Eigen::VectorXd& k_row);

// argmax of the decision values as a 1-based class label; exact ties go to
// the lowest class index.
int predict(const MulticlassModel& model, const Eigen::VectorXd& k_row);

// One prediction per row of k_rows (rows = test points, cols = training).
std::vector<int> predict_all(const MulticlassModel& model,
                             const Eigen::MatrixXd& k_rows);

}  // namespace qksvm::svm
