// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qksvm/data/dataset.hpp"
#include "qksvm/kernels/kernel.hpp"

namespace qksvm::cli {

// Settings shared by the dataset-driven experiment commands. Every field has
// a usable default; a JSON config file and command-line flags both override
// them (flags last). Validation happens before any computation starts.
struct ExperimentConfig {
  // Dataset stem inside `data_dir` (iris, tae, penguins, glass, ecoli,
  // vowel), or an explicit csv path combined with `schema`.
  std::string dataset;
  std::string schema;
  std::string data_dir = "data";

  // Kernel identifiers, evaluated independently. Quantum: qk-full,
  // qk-linear, qk-circular, qk-pauli-x, qk-pauli-y, qk-pauli-z. Classical:
  // linear, polynomial, sigmoid, gaussian.
  std::vector<std::string> kernels;

  std::string strategy = "one-vs-all";  // or "crammer-singer"
  std::vector<double> c_grid = {0.1, 1.0, 10.0, 100.0};
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_dir = "out";

  std::int64_t shots = 0;  // 0 = exact expectation values
  double noise_p = 0.0;    // depolarizing probability for quantum kernels
  // When non-empty, evaluate repeats each quantum kernel at these noise
  // levels alongside the noiseless run.
  std::vector<double> noise_sweep;

  int folds = 5;
  double test_fraction = 0.3;

  // Dimensionality reduction kicks in at `pca_min_features` input features,
  // keeping the smallest component count that explains `pca_threshold` of
  // the variance.
  double pca_threshold = 0.85;
  int pca_min_features = 6;
  // Fit normalization and PCA on the full dataset instead of the training
  // rows only.
  bool fit_on_all = false;

  double angle_scale = 1.0;
  // Training-size fractions for the learning-curve command.
  std::vector<double> sizes = {0.2, 0.4, 0.6, 0.8, 1.0};

  static ExperimentConfig from_json(const std::string& text);
  std::string to_json() const;
  void validate() const;
};

// Setup of the kernel-concentration study: synthetic points uniform on
// [0, 2pi)^N per qubit count, a shot-sampled kernel, and the relative test
// loss against its value at the smallest training size.
struct ConcentrationConfig {
  int min_qubits = 4;
  int max_qubits = 10;
  int total_points = 150;   // training pool plus test points
  std::int64_t shots = 1000;
  int test_points = 20;
  std::uint64_t seed = 15;
  std::vector<int> train_sizes = {10, 30, 50, 70, 90, 110, 130};
  int n_init = 10;  // reference size for the relative test loss
  int anchors = 10;
  double c_value = 1000.0;
  int workers = 1;
  std::string out_dir = "out";

  static ConcentrationConfig from_json(const std::string& text);
  std::string to_json() const;
  void validate() const;
};

// True for the qk-* identifiers.
bool is_quantum_kernel_id(const std::string& id);

// All identifiers accepted by `resolve_kernel_spec`, quantum first.
const std::vector<std::string>& known_kernel_ids();

// Builds the kernel specification behind an identifier. Classical defaults
// follow the usual conventions (polynomial degree 3, gaussian and sigmoid
// width 1/N, sigmoid offset -1); noise and shot sampling apply to quantum
// kernels only.
kernels::KernelSpec resolve_kernel_spec(const std::string& id, int n_features,
                                        double angle_scale, double noise_p,
                                        std::int64_t shots,
                                        std::uint64_t seed);

// Loads the configured dataset, either by stem or by explicit path.
data::Dataset load_input(const ExperimentConfig& config);

}  // namespace qksvm::cli
