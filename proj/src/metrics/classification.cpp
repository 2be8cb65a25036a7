// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/metrics/classification.hpp"

#include "qksvm/util/errors.hpp"

namespace qksvm::metrics {

namespace {

// 0 with a flag instead of 0/0.
double ratio(int num, int denom, bool& flagged) {
  if (denom == 0) {
    flagged = true;
    return 0.0;
  }
  return double(num) / double(denom);
}

double f1_of(double precision, double recall, bool& flagged) {
  const double sum = precision + recall;
  if (sum == 0.0) {
    flagged = true;
    return 0.0;
  }
  // The harmonic mean of equal values is that value; returning it directly
  // keeps the micro F1 = accuracy identity exact in floating point.
  if (precision == recall) return precision;
  return 2.0 * precision * recall / sum;
}

}  // namespace

ConfusionMatrix confusion(const std::vector<int>& true_labels,
                          const std::vector<int>& predicted_labels,
                          int n_classes) {
  require_data(n_classes >= 1, "confusion matrix needs at least one class");
  require_data(true_labels.size() == predicted_labels.size(),
               "label vectors differ in length");
  ConfusionMatrix cm;
  cm.counts = Eigen::MatrixXi::Zero(n_classes, n_classes);
  for (std::size_t i = 0; i < true_labels.size(); ++i) {
    const int t = true_labels[i];
    const int p = predicted_labels[i];
    require_data(t >= 1 && t <= n_classes,
                 "true label " + std::to_string(t) + " outside 1.." +
                     std::to_string(n_classes));
    require_data(p >= 1 && p <= n_classes,
                 "predicted label " + std::to_string(p) + " outside 1.." +
                     std::to_string(n_classes));
    ++cm.counts(t - 1, p - 1);
  }
  return cm;
}

MetricsReport classification_metrics(const ConfusionMatrix& cm) {
  const int l = cm.n_classes();
  const int total = cm.total();
  require_data(l >= 1 && total > 0, "empty confusion matrix");

  MetricsReport report;
  int pooled_tp = 0, pooled_fp = 0, pooled_fn = 0;
  for (int t = 0; t < l; ++t) {
    ClassMetrics c;
    c.support = cm.support(t);
    c.precision = ratio(cm.tp(t), cm.tp(t) + cm.fp(t), c.zero_division);
    c.recall = ratio(cm.tp(t), cm.tp(t) + cm.fn(t), c.zero_division);
    c.f1 = f1_of(c.precision, c.recall, c.zero_division);
    report.per_class.push_back(c);
    report.class_weights.push_back(double(c.support) / double(total));
    pooled_tp += cm.tp(t);
    pooled_fp += cm.fp(t);
    pooled_fn += cm.fn(t);

    report.macro_precision += c.precision / l;
    report.macro_recall += c.recall / l;
    report.macro_f1 += c.f1 / l;
    report.weighted_precision += report.class_weights.back() * c.precision;
    report.weighted_recall += report.class_weights.back() * c.recall;
    report.weighted_f1 += report.class_weights.back() * c.f1;
  }

  bool unused = false;
  report.micro_precision = ratio(pooled_tp, pooled_tp + pooled_fp, unused);
  report.micro_recall = ratio(pooled_tp, pooled_tp + pooled_fn, unused);
  report.micro_f1 =
      f1_of(report.micro_precision, report.micro_recall, unused);
  report.accuracy = double(pooled_tp) / double(total);
  return report;
}

}  // namespace qksvm::metrics
