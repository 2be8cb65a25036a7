// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/kernels/gram.hpp"

#include <vector>

#include "qksvm/qsim/channels.hpp"
#include "qksvm/util/errors.hpp"
#include "qksvm/util/parallel.hpp"

namespace qksvm::kernels {

namespace {

// Per-point feature states so each exact-quantum pair costs one overlap.
std::vector<qsim::StateVector> feature_states(const FeatureMapSpec& map,
                                              const Eigen::MatrixXd& data,
                                              int workers) {
  std::vector<qsim::StateVector> states(static_cast<std::size_t>(data.rows()));
  parallel_for(states.size(), workers, [&](std::size_t i) {
    states[i] =
        feature_state(map, data.row(static_cast<Eigen::Index>(i)).transpose());
  });
  return states;
}

Eigen::MatrixXd exact_quantum_square(const FeatureMapSpec& map,
                                     const Eigen::MatrixXd& data,
                                     int workers) {
  const auto states = feature_states(map, data, workers);
  const Eigen::Index m = data.rows();
  Eigen::MatrixXd values(m, m);
  parallel_for(static_cast<std::size_t>(m), workers, [&](std::size_t i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = ii; j < m; ++j) {
      const double v = qsim::overlap_probability(
          states[i], states[static_cast<std::size_t>(j)]);
      values(ii, j) = v;
      values(j, ii) = v;
    }
  });
  return values;
}

Eigen::MatrixXd exact_quantum_cross(const FeatureMapSpec& map,
                                    const Eigen::MatrixXd& rows,
                                    const Eigen::MatrixXd& cols,
                                    int workers) {
  const auto row_states = feature_states(map, rows, workers);
  const auto col_states = feature_states(map, cols, workers);
  Eigen::MatrixXd values(rows.rows(), cols.rows());
  parallel_for(row_states.size(), workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < col_states.size(); ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          qsim::overlap_probability(row_states[i], col_states[j]);
    }
  });
  return values;
}

// Noisy entries share the post-channel state of the row point across the row.
Eigen::MatrixXd noisy_matrix(const FeatureMapSpec& map, double noise_p,
                             const Eigen::MatrixXd& rows,
                             const Eigen::MatrixXd& cols, int workers) {
  Eigen::MatrixXd values(rows.rows(), cols.rows());
  parallel_for(static_cast<std::size_t>(rows.rows()), workers,
               [&](std::size_t i) {
                 const auto ii = static_cast<Eigen::Index>(i);
                 auto rho = qsim::DensityMatrix::zero_state(map.n_features);
                 rho = qsim::evolve_density(
                     std::move(rho),
                     build_feature_circuit(map, rows.row(ii).transpose()));
                 rho = qsim::apply_depolarizing_all(std::move(rho), noise_p);
                 for (Eigen::Index j = 0; j < cols.rows(); ++j) {
                   auto sigma = rho;
                   sigma = qsim::evolve_density(
                       std::move(sigma),
                       adjoint_circuit(build_feature_circuit(
                           map, cols.row(j).transpose())));
                   sigma =
                       qsim::apply_depolarizing_all(std::move(sigma), noise_p);
                   values(ii, j) = qsim::prob_all_zeros(sigma);
                 }
               });
  return values;
}

Eigen::MatrixXd entrywise(const KernelSpec& spec, const Eigen::MatrixXd& rows,
                          const Eigen::MatrixXd& cols, bool square,
                          int workers) {
  Eigen::MatrixXd values(rows.rows(), cols.rows());
  parallel_for(static_cast<std::size_t>(rows.rows()), workers,
               [&](std::size_t i) {
                 const auto ii = static_cast<Eigen::Index>(i);
                 const Eigen::VectorXd xi = rows.row(ii).transpose();
                 const Eigen::Index j0 = square ? ii : 0;
                 for (Eigen::Index j = j0; j < cols.rows(); ++j) {
                   const double v =
                       kernel_value(spec, xi, cols.row(j).transpose(),
                                    static_cast<std::uint64_t>(ii),
                                    static_cast<std::uint64_t>(j));
                   values(ii, j) = v;
                   if (square) values(j, ii) = v;
                 }
               });
  return values;
}

}  // namespace

GramCheck check_gram(const Eigen::MatrixXd& values) {
  GramCheck check;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    check.max_diag_error =
        std::max(check.max_diag_error, std::abs(values(i, i) - 1.0));
    for (Eigen::Index j = i + 1; j < values.cols(); ++j) {
      check.max_asymmetry =
          std::max(check.max_asymmetry, std::abs(values(i, j) - values(j, i)));
    }
  }
  const Eigen::MatrixXd sym = 0.5 * (values + values.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  check.min_eigenvalue = eig.eigenvalues().minCoeff();
  return check;
}

KernelMatrix gram_matrix(const Eigen::MatrixXd& rows,
                         const Eigen::MatrixXd& cols, const KernelSpec& spec,
                         int workers, const std::string& row_id,
                         const std::string& col_id) {
  spec.validate();
  require_config(rows.cols() == cols.cols(),
                 "row and column datasets differ in feature count");
  if (spec.is_quantum()) {
    require_config(rows.cols() == spec.map().n_features,
                   "dataset width does not match the feature map");
  }
  const bool square = row_id == col_id && rows.rows() == cols.rows();
  KernelMatrix out;
  out.spec = spec;
  out.row_id = row_id;
  out.col_id = col_id;
  if (spec.is_quantum() && spec.noise_p > 0.0) {
    out.values = noisy_matrix(spec.map(), spec.noise_p, rows, cols, workers);
  } else if (spec.is_quantum() && spec.shots == 0) {
    out.values = square ? exact_quantum_square(spec.map(), rows, workers)
                        : exact_quantum_cross(spec.map(), rows, cols, workers);
  } else {
    // Classical kernels are symmetric functions; shot estimates reuse the
    // (i, j) stream for (j, i) so the matrix stays symmetric by construction.
    out.values = entrywise(spec, rows, cols, square, workers);
  }
  return out;
}

KernelMatrix gram_matrix(const Eigen::MatrixXd& data, const KernelSpec& spec,
                         int workers, const std::string& dataset_id) {
  return gram_matrix(data, data, spec, workers, dataset_id, dataset_id);
}

}  // namespace qksvm::kernels
