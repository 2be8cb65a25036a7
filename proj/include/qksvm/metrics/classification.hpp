// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qksvm::metrics {

// Rows are true classes, columns predicted classes, both coded 1..l (the
// matrix itself is 0-indexed).
struct ConfusionMatrix {
  Eigen::MatrixXi counts;

  int n_classes() const { return static_cast<int>(counts.rows()); }
  int total() const { return counts.sum(); }
  int tp(int t) const { return counts(t, t); }
  int fn(int t) const { return counts.row(t).sum() - counts(t, t); }
  int fp(int t) const { return counts.col(t).sum() - counts(t, t); }
  int support(int t) const { return counts.row(t).sum(); }
};

ConfusionMatrix confusion(const std::vector<int>& true_labels,
                          const std::vector<int>& predicted_labels,
                          int n_classes);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int support = 0;
  // Set when a zero denominator forced the conventional value 0, e.g. a
  // class the model never predicts.
  bool zero_division = false;
};

// Per-class scores plus the three aggregation schemes. Micro pools the
// counts before dividing, so micro precision, recall and F1 all collapse to
// the accuracy for single-label problems; weighted uses the class support
// fractions as weights, which makes weighted recall another alias of
// accuracy.
struct MetricsReport {
  std::vector<ClassMetrics> per_class;
  std::vector<double> class_weights;
  double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
  double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
  double micro_precision = 0.0, micro_recall = 0.0, micro_f1 = 0.0;
  double accuracy = 0.0;
};

MetricsReport classification_metrics(const ConfusionMatrix& cm);

}  // namespace qksvm::metrics
