// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "qksvm/cli/config.hpp"

namespace qksvm::cli {

// Each command validates its config, runs the experiment, writes an output
// bundle under config.out_dir (config.json, metrics.json, tables/*.csv and,
// where applicable, matrices/*), and returns the metrics document. All
// outputs are byte-identical across reruns and worker counts for a fixed
// config.

// Gram matrices for every configured kernel over the whole dataset
// (statistics fit on all rows), cached and exported as csv.
nlohmann::ordered_json cmd_kernel_matrix(const ExperimentConfig& config);

// Stratified k-fold accuracy per kernel over the C grid; reports the best
// C's per-fold accuracies and the full grid.
nlohmann::ordered_json cmd_crossvalidate(const ExperimentConfig& config);

// Holdout evaluation: stratified split, C selection by inner
// cross-validation on the training rows, then test-set classification
// metrics, ROC curves and the confusion matrix. Quantum kernels repeat at
// each configured noise level.
nlohmann::ordered_json cmd_evaluate(const ExperimentConfig& config);

// Train and test accuracy as the training size grows, per fold of a
// stratified k-fold, at the C that maximizes full-size test accuracy.
nlohmann::ordered_json cmd_learning_curve(const ExperimentConfig& config);

// Kernel-concentration study on synthetic data: shot-sampled kernel values,
// training loss and relative test loss per qubit count and training size.
// Labels come from a random kernel-expansion teacher (reconstruction; the
// source figure does not define its labeling).
nlohmann::ordered_json cmd_concentration(const ConcentrationConfig& config);

// Kernel complexity report on the training Gram matrix: Frobenius norm,
// Monte Carlo Rademacher estimate and the norm-based upper bound.
nlohmann::ordered_json cmd_generalization(const ExperimentConfig& config);

}  // namespace qksvm::cli
