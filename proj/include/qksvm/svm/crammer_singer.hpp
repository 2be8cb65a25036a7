// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qksvm/svm/model.hpp"

namespace qksvm::svm {

// The joint multiclass dual in the variables alpha_i^s (m x l, alpha_i^{y_i}
// pinned to zero):
//
//   max  2 sum_{i,s} alpha_i^s - 1/2 sum_s (B^s)^T K B^s,
//   s.t. 0 <= alpha_i^s <= C,
//        sum_i alpha_i^{s'} = sum_i delta(y_i, s') A_i  for every s',
//
// with A_i = sum_s alpha_i^s and B_i^s = delta(y_i, s) A_i - alpha_i^s (the
// expansion coefficients of the class-s separating direction).

// Evaluates the simplified dual objective
//   2 sum alpha_i^s
//   + 1/2 sum_{i,j} K_ij [ -delta(y_i, y_j) A_i A_j
//                          + sum_s (2 alpha_i^s alpha_j^{y_i}
//                                   - alpha_i^s alpha_j^s) ].
// Throws when alphas violate the pinned-zero, non-negativity, or equality
// constraints beyond 1e-6.
double crammer_singer_objective(const Eigen::MatrixXd& alphas,
                                const Eigen::MatrixXd& K,
                                const std::vector<int>& labels);

// The same value through the pre-simplification expansion, which keeps the
// delta(y_i,s) delta(y_j,s) product under the class sum instead of merging
// it. Agreement with crammer_singer_objective is a correctness check of the
// delta-identity step.
double crammer_singer_objective_expanded(const Eigen::MatrixXd& alphas,
                                         const Eigen::MatrixXd& K,
                                         const std::vector<int>& labels);

// Largest violation of the per-class equality constraints
// sum_i alpha_i^{s'} - sum_i delta(y_i, s') A_i.
double crammer_singer_constraint_residual(const Eigen::MatrixXd& alphas,
                                          const std::vector<int>& labels);

// Euclidean projection onto the feasible set (box [0, C] intersected with
// the equality constraints, pinned coordinates fixed at zero) by Dykstra's
// alternating projections.
Eigen::MatrixXd crammer_singer_project(const Eigen::MatrixXd& alphas,
                                       const std::vector<int>& labels,
                                       double C);

// Maximizes the joint dual by projected gradient ascent with backtracking
// line search along the projection arc. Monotone in the objective; stops at
// a first-order stationary point (step tolerance tol) or after max_iters
// gradient steps, flagging the model unconverged in the latter case. Biases
// are recovered from the margin equalities of free multipliers by least
// squares under the gauge sum_s b_s = 0 (zero when none are free).
// `n_classes` widens the class universe when training on a subset of a
// larger problem; 0 infers it from the labels.
MulticlassModel crammer_singer_train(const Eigen::MatrixXd& K,
                                     const std::vector<int>& labels, double C,
                                     double tol = 1e-6, int max_iters = 2000,
                                     int n_classes = 0);

}  // namespace qksvm::svm
