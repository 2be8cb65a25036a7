// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qksvm::metrics {

// One-vs-rest operating curve. Points run from (0,0) to (1,1) and are
// monotone in both coordinates; `defined` is false when the class has no
// positives (or no negatives), in which case the curve is empty and the
// class is left out of the AUC aggregates.
struct RocCurve {
  std::vector<double> fpr;
  std::vector<double> tpr;
  double auc = 0.0;
  int positives = 0;
  int negatives = 0;
  bool defined = true;
};

struct RocReport {
  std::vector<RocCurve> per_class;
  RocCurve micro;  // pooled over all (instance, class) pairs
  double macro_auc = 0.0;
  double weighted_auc = 0.0;
  double micro_auc = 0.0;
  std::vector<std::string> notices;
};

// Threshold sweep over each class's decision values (column t of `scores`
// against the indicator of class t), with thresholds at every distinct
// score; AUC by the trapezoid rule. Scores must be finite.
RocReport roc_curves(const std::vector<int>& true_labels,
                     const Eigen::MatrixXd& scores, int n_classes);

}  // namespace qksvm::metrics
