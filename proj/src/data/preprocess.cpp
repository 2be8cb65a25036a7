// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/data/preprocess.hpp"

#include <cmath>

#include "qksvm/util/errors.hpp"

namespace qksvm::data {

Normalizer zscore_fit(const Eigen::MatrixXd& train) {
  require_data(train.rows() > 0, "cannot normalize an empty matrix");
  Normalizer norm;
  norm.mean = train.colwise().mean();
  const Eigen::MatrixXd centered = train.rowwise() - norm.mean.transpose();
  norm.scale =
      (centered.array().square().colwise().mean()).sqrt().matrix();
  return norm;
}

Eigen::MatrixXd zscore_apply(const Normalizer& norm, const Eigen::MatrixXd& x) {
  require_data(x.cols() == norm.mean.size(),
               "normalizer was fit on a different feature count");
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    if (norm.scale[c] > 0.0) {
      out.col(c) = (x.col(c).array() - norm.mean[c]) / norm.scale[c];
    } else {
      // Constant training columns carry no information; keep the column so
      // feature positions stay aligned.
      out.col(c).setZero();
    }
  }
  return out;
}

std::pair<Normalizer, Dataset> zscore_fit_transform(const Dataset& train) {
  Normalizer norm = zscore_fit(train.features);
  Dataset out = train;
  out.features = zscore_apply(norm, train.features);
  return {std::move(norm), std::move(out)};
}

Dataset zscore_apply(const Normalizer& norm, const Dataset& other) {
  Dataset out = other;
  out.features = zscore_apply(norm, other.features);
  return out;
}

PcaModel pca_fit(const Eigen::MatrixXd& train, double threshold) {
  require_data(train.cols() >= 2, "PCA needs at least two features");
  require_data(train.rows() >= 2, "PCA needs at least two rows");
  require_config(threshold > 0.0 && threshold <= 1.0,
                 "PCA threshold must lie in (0, 1]");

  PcaModel model;
  model.mean = train.colwise().mean();
  const Eigen::MatrixXd centered = train.rowwise() - model.mean.transpose();
  const Eigen::MatrixXd covariance =
      centered.transpose() * centered / double(train.rows() - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  require_numerical(solver.info() == Eigen::Success,
                    "covariance eigendecomposition failed");

  // Eigen returns ascending eigenvalues; flip to descending and clamp the
  // tiny negatives a rank-deficient covariance produces.
  const Eigen::Index n = train.cols();
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values[i] = std::max(0.0, solver.eigenvalues()[n - 1 - i]);
    vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  const double total = values.sum();
  require_data(total > 0.0, "PCA requires nonconstant training data");
  model.explained_variance_ratio = values / total;

  // Fix each eigenvector's sign so results do not depend on solver
  // internals: the entry of largest magnitude is made positive.
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index at = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&at);
    if (vectors(at, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }

  double cumulative = 0.0;
  model.k = static_cast<int>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cumulative += model.explained_variance_ratio[i];
    if (cumulative + 1e-12 >= threshold) {
      model.k = static_cast<int>(i) + 1;
      break;
    }
  }
  model.components = vectors.leftCols(model.k);
  return model;
}

Eigen::MatrixXd pca_apply(const PcaModel& model, const Eigen::MatrixXd& x) {
  require_data(x.cols() == model.mean.size(),
               "PCA model was fit on a different feature count");
  return (x.rowwise() - model.mean.transpose()) * model.components;
}

std::pair<PcaModel, Dataset> pca_fit_transform(const Dataset& train,
                                               double threshold) {
  PcaModel model = pca_fit(train.features, threshold);
  Dataset out = pca_apply(model, train);
  return {std::move(model), std::move(out)};
}

Dataset pca_apply(const PcaModel& model, const Dataset& other) {
  Dataset out = other;
  out.features = pca_apply(model, other.features);
  out.feature_names.clear();
  for (int i = 1; i <= model.k; ++i) {
    out.feature_names.push_back("pc" + std::to_string(i));
  }
  return out;
}

}  // namespace qksvm::data
