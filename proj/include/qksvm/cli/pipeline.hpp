// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qksvm/data/dataset.hpp"
#include "qksvm/svm/model.hpp"

namespace qksvm::cli {

// Train/test feature matrices after normalization and optional PCA, with the
// labels that go with them. `pca_k` is 0 when PCA was skipped.
struct SplitView {
  Eigen::MatrixXd train_x;
  Eigen::MatrixXd test_x;
  std::vector<int> train_y;
  std::vector<int> test_y;
  int pca_k = 0;
};

// Applies z-score normalization, then PCA when the feature count reaches
// `pca_min_features`. Statistics come from the training rows, or from the
// whole dataset when `fit_on_all` is set. `test_idx` may be empty.
SplitView transform_split(const data::Dataset& dataset,
                          const std::vector<int>& train_idx,
                          const std::vector<int>& test_idx, bool fit_on_all,
                          double pca_threshold, int pca_min_features);

// Row/column submatrix by index lists.
Eigen::MatrixXd gather(const Eigen::MatrixXd& k_matrix,
                       const std::vector<int>& rows,
                       const std::vector<int>& cols);
Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& x,
                            const std::vector<int>& rows);
std::vector<int> gather_labels(const std::vector<int>& labels,
                               const std::vector<int>& indices);

// Ascending indices of 0..m-1 not contained in the sorted `subset`.
std::vector<int> complement(int m, const std::vector<int>& subset);

double accuracy(const std::vector<int>& truth,
                const std::vector<int>& predicted);

// Trains with the configured decomposition on a precomputed Gram matrix.
svm::MulticlassModel train_multiclass(const Eigen::MatrixXd& k_matrix,
                                      const std::vector<int>& labels, double c,
                                      svm::Strategy strategy, int workers,
                                      int n_classes);

// Per-class decision values, one row per row of `k_rows`.
Eigen::MatrixXd decision_matrix(const svm::MulticlassModel& model,
                                const Eigen::MatrixXd& k_rows);

// C selection by stratified cross-validation on a training Gram matrix.
struct CGridResult {
  double best_c = 0.0;
  double best_mean = 0.0;
  // Fold accuracies of the winning C, fold order.
  std::vector<double> best_fold_accuracy;
  Eigen::MatrixXd accuracy;  // c_grid.size() x folds
};

// Evaluates every C on the same stratified folds and keeps the best mean
// accuracy, ties to the smaller C. Fold-training subsets may lack rare
// classes; the class universe stays `n_classes` throughout.
CGridResult select_c(const Eigen::MatrixXd& k_matrix,
                     const std::vector<int>& labels,
                     const std::vector<double>& c_grid, int folds,
                     svm::Strategy strategy, std::uint64_t seed, int workers,
                     int n_classes);

// Stratified subsample of round(fraction * size) positions into `labels`,
// at least one per class present, shuffled per class by seed. Sorted.
std::vector<int> stratified_subsample(const std::vector<int>& labels,
                                      double fraction, std::uint64_t seed);

// Content digest of a loaded dataset, echoed into output bundles.
std::uint64_t dataset_digest(const data::Dataset& dataset);

// Identity string for Gram caching: tag plus a digest of the matrix bytes.
std::string matrix_identity(const std::string& tag, const Eigen::MatrixXd& m);

// Deterministic child seed so distinct Gram blocks get distinct shot
// streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b = 0);

}  // namespace qksvm::cli
