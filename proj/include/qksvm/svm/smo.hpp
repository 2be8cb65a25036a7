// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "qksvm/svm/model.hpp"

namespace qksvm::svm {

// Maximizes the binary kernel SVM dual
//   L(alpha) = sum_i alpha_i - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij
// subject to 0 <= alpha_i <= C and sum_i y_i alpha_i = 0, by sequential
// minimal optimization with maximal-violating-pair working set selection.
// Terminates when the KKT violation gap drops to tol or the iteration budget
// max_passes * m runs out (the model is then flagged unconverged). The dual
// objective is non-decreasing at every step.
BinaryModel smo_train_binary(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                             double C, double tol = 1e-3,
                             int max_passes = 1000);

// Dual objective of a binary model under kernel K (for diagnostics/tests).
double binary_dual_objective(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                             const Eigen::VectorXd& alphas);

// Trains l one-vs-rest binary classifiers: class s is relabeled +1 against
// all others and solved independently (in parallel when workers > 1). A fold
// whose relabeling is single-class yields the constant f = -1 classifier and
// a warning instead of an error. `n_classes` widens the class universe when
// training on a subset of a larger problem (absent classes then also get the
// constant classifier); 0 infers the count and requires every class present.
MulticlassModel train_one_vs_all(const Eigen::MatrixXd& K,
                                 const std::vector<int>& labels, double C,
                                 double tol = 1e-3, int max_passes = 1000,
                                 int workers = 1, int n_classes = 0);

}  // namespace qksvm::svm
