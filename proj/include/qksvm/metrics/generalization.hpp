// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace qksvm::metrics {

// Capacity analysis of the kernel hypothesis class: a Monte-Carlo estimate
// of the empirical Rademacher complexity together with its closed-form
// Frobenius upper bound (delta / D) * ||K||_F.
struct GeneralizationReport {
  double frobenius_norm = 0.0;
  double rademacher_estimate = 0.0;
  double rademacher_std_error = 0.0;
  double upper_bound = 0.0;
  double delta = 1.0;
  int sample_count = 0;
  int draws = 0;
};

// (delta / D) * ||K||_F with D the row count of K.
double frobenius_bound(const Eigen::MatrixXd& k_matrix, double delta = 1.0);

struct RademacherEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  int draws = 0;
};

// Averages (delta / D) * ||K w|| over `draws` uniform sign vectors w. Each
// draw uses its own (seed, draw-index) stream, so the result is independent
// of evaluation order.
RademacherEstimate rademacher_estimate(const Eigen::MatrixXd& k_matrix,
                                       double delta, int draws,
                                       std::uint64_t seed);

GeneralizationReport generalization_report(const Eigen::MatrixXd& k_matrix,
                                           double delta = 1.0,
                                           int draws = 200,
                                           std::uint64_t seed = 0);

}  // namespace qksvm::metrics
