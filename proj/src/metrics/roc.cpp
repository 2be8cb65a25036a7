// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/metrics/roc.hpp"

#include <algorithm>
#include <cmath>

#include "qksvm/util/errors.hpp"

namespace qksvm::metrics {

namespace {

// Sweeps thresholds descending through the distinct score values. Each
// threshold v contributes the operating point of the classifier
// "positive iff score >= v"; the (0,0) start is the +infinity sentinel and
// the final point is (1,1) once every instance is predicted positive.
RocCurve sweep(const std::vector<double>& scores,
               const std::vector<char>& positive) {
  RocCurve curve;
  const auto m = scores.size();
  for (std::size_t i = 0; i < m; ++i) {
    (positive[i] ? curve.positives : curve.negatives) += 1;
  }
  if (curve.positives == 0 || curve.negatives == 0) {
    curve.defined = false;
    return curve;
  }

  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  curve.fpr.push_back(0.0);
  curve.tpr.push_back(0.0);
  int tp = 0, fp = 0;
  std::size_t at = 0;
  while (at < m) {
    const double value = scores[order[at]];
    // Take every instance tied at this threshold in one step.
    while (at < m && scores[order[at]] == value) {
      (positive[order[at]] ? tp : fp) += 1;
      ++at;
    }
    curve.fpr.push_back(double(fp) / double(curve.negatives));
    curve.tpr.push_back(double(tp) / double(curve.positives));
  }

  for (std::size_t k = 1; k < curve.fpr.size(); ++k) {
    curve.auc += (curve.fpr[k] - curve.fpr[k - 1]) *
                 (curve.tpr[k] + curve.tpr[k - 1]) / 2.0;
  }
  return curve;
}

}  // namespace

RocReport roc_curves(const std::vector<int>& true_labels,
                     const Eigen::MatrixXd& scores, int n_classes) {
  require_data(n_classes >= 2, "ROC analysis needs at least two classes");
  require_data(scores.rows() == static_cast<Eigen::Index>(true_labels.size()),
               "score matrix row count does not match label count");
  require_data(scores.cols() == n_classes,
               "score matrix column count does not match class count");
  require_data(scores.allFinite(), "scores must be finite");

  const auto m = true_labels.size();
  RocReport report;

  std::vector<double> pooled_scores;
  std::vector<char> pooled_positive;
  pooled_scores.reserve(m * static_cast<std::size_t>(n_classes));
  pooled_positive.reserve(m * static_cast<std::size_t>(n_classes));

  double weighted_sum = 0.0, weight_total = 0.0;
  double macro_sum = 0.0;
  int defined_classes = 0;
  for (int t = 0; t < n_classes; ++t) {
    std::vector<double> class_scores(m);
    std::vector<char> class_positive(m);
    for (std::size_t i = 0; i < m; ++i) {
      class_scores[i] = scores(static_cast<Eigen::Index>(i), t);
      class_positive[i] = true_labels[i] == t + 1 ? 1 : 0;
      pooled_scores.push_back(class_scores[i]);
      pooled_positive.push_back(class_positive[i]);
    }
    RocCurve curve = sweep(class_scores, class_positive);
    if (!curve.defined) {
      report.notices.push_back(
          "class " + std::to_string(t + 1) +
          (curve.positives == 0 ? " has no positive instances"
                                : " has no negative instances") +
          "; AUC undefined and excluded from aggregates");
    } else {
      macro_sum += curve.auc;
      ++defined_classes;
      const double weight = double(curve.positives) / double(m);
      weighted_sum += weight * curve.auc;
      weight_total += weight;
    }
    report.per_class.push_back(std::move(curve));
  }

  report.macro_auc =
      defined_classes > 0 ? macro_sum / defined_classes : 0.0;
  report.weighted_auc = weight_total > 0.0 ? weighted_sum / weight_total : 0.0;

  report.micro = sweep(pooled_scores, pooled_positive);
  report.micro_auc = report.micro.defined ? report.micro.auc : 0.0;
  return report;
}

}  // namespace qksvm::metrics
