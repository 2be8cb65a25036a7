// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/metrics/generalization.hpp"

#include <cmath>

#include "qksvm/util/errors.hpp"
#include "qksvm/util/rng.hpp"

namespace qksvm::metrics {

double frobenius_bound(const Eigen::MatrixXd& k_matrix, double delta) {
  require_data(k_matrix.rows() > 0, "empty kernel matrix");
  return delta * k_matrix.norm() / double(k_matrix.rows());
}

RademacherEstimate rademacher_estimate(const Eigen::MatrixXd& k_matrix,
                                       double delta, int draws,
                                       std::uint64_t seed) {
  require_data(k_matrix.rows() == k_matrix.cols(),
               "Rademacher estimate needs a square kernel matrix");
  require_config(draws > 0, "draw count must be positive");
  const Eigen::Index d = k_matrix.rows();

  double sum = 0.0, sum_sq = 0.0;
  Eigen::VectorXd signs(d);
  for (int draw = 0; draw < draws; ++draw) {
    Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(draw)});
    for (Eigen::Index i = 0; i < d; ++i) signs[i] = rng.sign();
    const double value = delta * (k_matrix * signs).norm() / double(d);
    sum += value;
    sum_sq += value * value;
  }

  RademacherEstimate out;
  out.draws = draws;
  out.estimate = sum / draws;
  if (draws > 1) {
    const double variance =
        std::max(0.0, (sum_sq - sum * sum / draws) / (draws - 1));
    out.std_error = std::sqrt(variance / draws);
  }
  return out;
}

GeneralizationReport generalization_report(const Eigen::MatrixXd& k_matrix,
                                           double delta, int draws,
                                           std::uint64_t seed) {
  GeneralizationReport report;
  report.frobenius_norm = k_matrix.norm();
  report.upper_bound = frobenius_bound(k_matrix, delta);
  const RademacherEstimate estimate =
      rademacher_estimate(k_matrix, delta, draws, seed);
  report.rademacher_estimate = estimate.estimate;
  report.rademacher_std_error = estimate.std_error;
  report.delta = delta;
  report.sample_count = static_cast<int>(k_matrix.rows());
  report.draws = draws;
  return report;
}

}  // namespace qksvm::metrics
