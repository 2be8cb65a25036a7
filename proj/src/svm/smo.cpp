// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/svm/smo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>

#include "qksvm/util/errors.hpp"
#include "qksvm/util/parallel.hpp"

namespace qksvm::svm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_binary_problem(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                             double C) {
  require_config(K.rows() == K.cols(), "kernel matrix must be square");
  require_config(K.rows() == y.size(),
                 "label vector length does not match the kernel matrix");
  require_config(C > 0.0, "penalty C must be positive");
  bool has_pos = false, has_neg = false;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    require_config(y[i] == 1.0 || y[i] == -1.0, "binary labels must be +1/-1");
    (y[i] > 0 ? has_pos : has_neg) = true;
  }
  require_data(has_pos && has_neg,
               "degenerate binary problem: all labels belong to one class");
}

// Per-sample bias candidate y_i - f_no_bias(i); the gradient of the dual in
// LIBSVM form is G_i = y_i f_no_bias(i) - 1, so this equals -y_i G_i.
double violation(const Eigen::VectorXd& y, const Eigen::VectorXd& grad, int i) {
  return -y[i] * grad[i];
}

}  // namespace

BinaryModel smo_train_binary(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                             double C, double tol, int max_passes) {
  validate_binary_problem(K, y, C);
  const auto m = static_cast<int>(K.rows());

  // Minimize W(alpha) = 1/2 alpha^T Q alpha - e^T alpha with Q_ij =
  // y_i y_j K_ij; grad G = Q alpha - e. Starting from alpha = 0, G = -e.
  Eigen::VectorXd alphas = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(m, -1.0);

  const std::int64_t budget = static_cast<std::int64_t>(max_passes) * m;
  bool converged = false;

  for (std::int64_t iter = 0; iter < budget; ++iter) {
    // Maximal violating pair: i maximizes -y G over I_up, j minimizes it
    // over I_low. Ties resolve to the lowest index for determinism.
    int i = -1, j = -1;
    double up = -kInf, low = kInf;
    for (int t = 0; t < m; ++t) {
      const bool in_up = (y[t] > 0 && alphas[t] < C) || (y[t] < 0 && alphas[t] > 0);
      const bool in_low = (y[t] < 0 && alphas[t] < C) || (y[t] > 0 && alphas[t] > 0);
      const double v = violation(y, grad, t);
      if (in_up && v > up) {
        up = v;
        i = t;
      }
      if (in_low && v < low) {
        low = v;
        j = t;
      }
    }
    if (i < 0 || j < 0 || up - low <= tol) {
      converged = true;
      break;
    }

    // Move along alpha_i += y_i d, alpha_j -= y_j d, which preserves
    // y . alpha. The restriction of W is
    //   W(d) = W(0) - (up - low) d + 1/2 eta d^2,
    // with curvature eta = K_ii + K_jj - 2 K_ij >= 0 for PSD K.
    double d_lo = (y[i] > 0) ? -alphas[i] : alphas[i] - C;
    double d_hi = (y[i] > 0) ? C - alphas[i] : alphas[i];
    d_lo = std::max(d_lo, (y[j] > 0) ? alphas[j] - C : -alphas[j]);
    d_hi = std::min(d_hi, (y[j] > 0) ? alphas[j] : C - alphas[j]);

    const double eta = K(i, i) + K(j, j) - 2.0 * K(i, j);
    double d;
    if (eta > 0.0) {
      d = std::clamp((up - low) / eta, d_lo, d_hi);
    } else {
      // Flat or indefinite direction (duplicate points): the linear term
      // decides, and the better endpoint is the feasible minimizer.
      const auto delta_w = [&](double step) {
        return -(up - low) * step + 0.5 * eta * step * step;
      };
      d = (delta_w(d_lo) < delta_w(d_hi)) ? d_lo : d_hi;
    }
    if (d == 0.0) {
      converged = true;
      break;
    }

    alphas[i] += y[i] * d;
    alphas[j] -= y[j] * d;
    // Clamp away accumulated rounding so box membership stays exact.
    alphas[i] = std::clamp(alphas[i], 0.0, C);
    alphas[j] = std::clamp(alphas[j], 0.0, C);
    grad += d * (y.array() * (K.col(i) - K.col(j)).array()).matrix();
  }

  BinaryModel model;
  model.alphas = alphas;
  model.y = y;
  model.C = C;
  model.converged = converged;
  for (int t = 0; t < m; ++t) {
    if (alphas[t] > kSupportThreshold) model.support_indices.push_back(t);
  }

  // Bias from the margin equalities of free support vectors, falling back to
  // the midpoint of the feasible interval [low, up] of bias candidates.
  double sum = 0.0;
  int free_count = 0;
  double up = -kInf, low = kInf;
  for (int t = 0; t < m; ++t) {
    const double candidate = violation(y, grad, t);
    const bool in_up = (y[t] > 0 && alphas[t] < C) || (y[t] < 0 && alphas[t] > 0);
    const bool in_low = (y[t] < 0 && alphas[t] < C) || (y[t] > 0 && alphas[t] > 0);
    if (in_up) up = std::max(up, candidate);
    if (in_low) low = std::min(low, candidate);
    if (alphas[t] > kSupportThreshold && alphas[t] < C - kSupportThreshold) {
      sum += candidate;
      ++free_count;
    }
  }
  model.bias = free_count > 0 ? sum / free_count : 0.5 * (up + low);
  return model;
}

double binary_dual_objective(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                             const Eigen::VectorXd& alphas) {
  const Eigen::VectorXd w = alphas.array() * y.array();
  return alphas.sum() - 0.5 * w.dot(K * w);
}

MulticlassModel train_one_vs_all(const Eigen::MatrixXd& K,
                                 const std::vector<int>& labels, double C,
                                 double tol, int max_passes, int workers,
                                 int n_classes) {
  require_config(K.rows() == K.cols(), "kernel matrix must be square");
  require_config(static_cast<Eigen::Index>(labels.size()) == K.rows(),
                 "label count does not match the kernel matrix");
  require_config(!labels.empty(), "empty training set");

  int l = 0;
  for (int label : labels) {
    require_data(label >= 1, "class labels must be 1-based");
    l = std::max(l, label);
  }
  require_config(n_classes == 0 || n_classes >= l,
                 "n_classes is smaller than the largest label");
  l = std::max(l, n_classes);
  require_data(l >= 2, "multiclass training needs at least two classes");
  if (n_classes == 0) {
    std::set<int> present(labels.begin(), labels.end());
    for (int s = 1; s <= l; ++s) {
      require_data(present.count(s) == 1,
                   "class " + std::to_string(s) + " is absent from the labels");
    }
  }

  const auto m = static_cast<int>(labels.size());
  MulticlassModel model;
  model.strategy = Strategy::OneVsAll;
  model.n_classes = l;
  model.binary.resize(static_cast<std::size_t>(l));
  std::vector<std::string> warnings(static_cast<std::size_t>(l));

  parallel_for(static_cast<std::size_t>(l), workers, [&](std::size_t s) {
    Eigen::VectorXd ys(m);
    int positives = 0;
    for (int i = 0; i < m; ++i) {
      const bool is_s = labels[static_cast<std::size_t>(i)] ==
                        static_cast<int>(s) + 1;
      ys[i] = is_s ? 1.0 : -1.0;
      positives += is_s ? 1 : 0;
    }
    if (positives == 0 || positives == m) {
      // Single-class fold: constant classifier f = -1.
      BinaryModel degenerate;
      degenerate.alphas = Eigen::VectorXd::Zero(m);
      degenerate.y = ys;
      degenerate.bias = -1.0;
      degenerate.C = C;
      degenerate.degenerate = true;
      model.binary[s] = std::move(degenerate);
      warnings[s] = "class " + std::to_string(s + 1) +
                    ": single-class fold, using the constant -1 classifier";
      return;
    }
    model.binary[s] = smo_train_binary(K, ys, C, tol, max_passes);
    if (!model.binary[s].converged) {
      warnings[s] = "class " + std::to_string(s + 1) +
                    ": SMO stopped at the iteration budget before reaching "
                    "the KKT tolerance";
    }
  });

  for (auto& w : warnings) {
    if (!w.empty()) model.warnings.push_back(std::move(w));
  }
  return model;
}

}  // namespace qksvm::svm
