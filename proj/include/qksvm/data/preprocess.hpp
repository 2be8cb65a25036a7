// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <utility>

#include "qksvm/data/dataset.hpp"

namespace qksvm::data {

// Per-feature location and scale learned from a training matrix. The scale
// is the population standard deviation (divide by m, not m - 1); constant
// columns keep scale 0 and transform to exactly zero so that column count,
// and with it qubit count, is preserved.
struct Normalizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;
};

Normalizer zscore_fit(const Eigen::MatrixXd& train);
Eigen::MatrixXd zscore_apply(const Normalizer& norm, const Eigen::MatrixXd& x);

std::pair<Normalizer, Dataset> zscore_fit_transform(const Dataset& train);
Dataset zscore_apply(const Normalizer& norm, const Dataset& other);

// Principal components of the training covariance (sample convention,
// divide by m - 1). `components` holds the leading k eigenvectors as
// orthonormal columns; `explained_variance_ratio` covers all input
// dimensions, is non-increasing and sums to one.
struct PcaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;  // N x k
  Eigen::VectorXd explained_variance_ratio;  // length N
  int k = 0;
};

// Selects k as the smallest component count whose cumulative explained
// variance reaches `threshold`.
PcaModel pca_fit(const Eigen::MatrixXd& train, double threshold = 0.85);
Eigen::MatrixXd pca_apply(const PcaModel& model, const Eigen::MatrixXd& x);

std::pair<PcaModel, Dataset> pca_fit_transform(const Dataset& train,
                                               double threshold = 0.85);
Dataset pca_apply(const PcaModel& model, const Dataset& other);

}  // namespace qksvm::data
