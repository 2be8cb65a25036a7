// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <Eigen/Dense>

#include "qksvm/kernels/kernel.hpp"

namespace qksvm::kernels {

struct KernelMatrix {
  Eigen::MatrixXd values;
  KernelSpec spec;
  std::string row_id;  // dataset identity of the rows
  std::string col_id;  // dataset identity of the columns

  bool square_training() const {
    return values.rows() == values.cols() && row_id == col_id;
  }
};

// Diagnostics for the Mercer invariants of a square training Gram matrix.
struct GramCheck {
  double max_asymmetry = 0.0;    // max |K_ij - K_ji|
  double max_diag_error = 0.0;   // max |K_ii - 1| (meaningful for quantum)
  double min_eigenvalue = 0.0;
};

GramCheck check_gram(const Eigen::MatrixXd& values);

// All pairwise kernel values between rows of `rows` and rows of `cols`.
// Exact-quantum and classical square matrices compute the upper triangle and
// mirror it; shot-sampled entries use per-entry RNG streams so any worker
// count yields identical values.
KernelMatrix gram_matrix(const Eigen::MatrixXd& rows,
                         const Eigen::MatrixXd& cols, const KernelSpec& spec,
                         int workers, const std::string& row_id,
                         const std::string& col_id);

// Square training Gram over one dataset.
KernelMatrix gram_matrix(const Eigen::MatrixXd& data, const KernelSpec& spec,
                         int workers, const std::string& dataset_id);

}  // namespace qksvm::kernels
