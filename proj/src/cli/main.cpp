// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qksvm/cli/commands.hpp"
#include "qksvm/util/errors.hpp"

namespace {

using qksvm::cli::ConcentrationConfig;
using qksvm::cli::ExperimentConfig;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  qksvm::require_config(in.good(), "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string canonical_strategy(const std::string& name) {
  if (name == "ova") return "one-vs-all";
  if (name == "cs") return "crammer-singer";
  return name;
}

// Flag values and their CLI11 options for one experiment subcommand. Flags
// given on the command line override the config file, which overrides the
// defaults.
struct ExperimentFlags {
  ExperimentConfig flag;
  std::string config_path;
  bool exact = false;

  CLI::Option* dataset = nullptr;
  CLI::Option* schema = nullptr;
  CLI::Option* data_dir = nullptr;
  CLI::Option* kernels = nullptr;
  CLI::Option* strategy = nullptr;
  CLI::Option* c_grid = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* out_dir = nullptr;
  CLI::Option* shots = nullptr;
  CLI::Option* exact_flag = nullptr;
  CLI::Option* noise = nullptr;
  CLI::Option* noise_sweep = nullptr;
  CLI::Option* folds = nullptr;
  CLI::Option* test_fraction = nullptr;
  CLI::Option* pca_threshold = nullptr;
  CLI::Option* fit_on_all = nullptr;
  CLI::Option* angle_scale = nullptr;
  CLI::Option* sizes = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    dataset = cmd->add_option("--dataset", flag.dataset,
                              "dataset stem in the data directory, or a csv "
                              "path (then --schema is required)");
    schema = cmd->add_option("--schema", flag.schema, "dataset schema path");
    data_dir =
        cmd->add_option("--data-dir", flag.data_dir, "dataset directory");
    kernels = cmd->add_option("--kernels", flag.kernels,
                              "kernel identifiers (repeatable or "
                              "comma-separated)")
                  ->delimiter(',');
    strategy =
        cmd->add_option("--strategy", flag.strategy,
                        "multiclass decomposition")
            ->check(CLI::IsMember(
                {"ova", "cs", "one-vs-all", "crammer-singer"}));
    c_grid = cmd->add_option("--c-grid", flag.c_grid,
                             "regularization grid (comma-separated)")
                 ->delimiter(',');
    seed = cmd->add_option("--seed", flag.seed, "random seed");
    workers = cmd->add_option("--workers", flag.workers, "worker threads");
    out_dir = cmd->add_option("--out", flag.out_dir, "output directory");
    shots = cmd->add_option("--shots", flag.shots,
                            "measurement shots per kernel entry");
    exact_flag = cmd->add_flag("--exact", exact,
                               "exact kernel expectation values (shots 0)");
    exact_flag->excludes(shots);
    shots->excludes(exact_flag);
    noise = cmd->add_option("--noise", flag.noise_p,
                            "depolarizing probability for quantum kernels");
    noise_sweep = cmd->add_option("--noise-sweep", flag.noise_sweep,
                                  "noise levels to sweep in evaluate")
                      ->delimiter(',');
    folds = cmd->add_option("--folds", flag.folds, "cross-validation folds");
    test_fraction = cmd->add_option("--test-fraction", flag.test_fraction,
                                    "holdout fraction");
    pca_threshold = cmd->add_option("--pca-threshold", flag.pca_threshold,
                                    "explained-variance threshold");
    fit_on_all = cmd->add_flag("--fit-on-all", flag.fit_on_all,
                               "fit normalization and PCA on all rows");
    angle_scale = cmd->add_option("--angle-scale", flag.angle_scale,
                                  "encoded-angle multiplier");
    sizes = cmd->add_option("--sizes", flag.sizes,
                            "learning-curve training fractions")
                ->delimiter(',');
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = ExperimentConfig::from_json(slurp(config_path));
    }
    if (dataset->count() > 0) cfg.dataset = flag.dataset;
    if (schema->count() > 0) cfg.schema = flag.schema;
    if (data_dir->count() > 0) cfg.data_dir = flag.data_dir;
    if (kernels->count() > 0) cfg.kernels = flag.kernels;
    if (strategy->count() > 0) cfg.strategy = flag.strategy;
    if (c_grid->count() > 0) cfg.c_grid = flag.c_grid;
    if (seed->count() > 0) cfg.seed = flag.seed;
    if (workers->count() > 0) cfg.workers = flag.workers;
    if (out_dir->count() > 0) cfg.out_dir = flag.out_dir;
    if (shots->count() > 0) cfg.shots = flag.shots;
    if (exact_flag->count() > 0) cfg.shots = 0;
    if (noise->count() > 0) cfg.noise_p = flag.noise_p;
    if (noise_sweep->count() > 0) cfg.noise_sweep = flag.noise_sweep;
    if (folds->count() > 0) cfg.folds = flag.folds;
    if (test_fraction->count() > 0) cfg.test_fraction = flag.test_fraction;
    if (pca_threshold->count() > 0) cfg.pca_threshold = flag.pca_threshold;
    if (fit_on_all->count() > 0) cfg.fit_on_all = flag.fit_on_all;
    if (angle_scale->count() > 0) cfg.angle_scale = flag.angle_scale;
    if (sizes->count() > 0) cfg.sizes = flag.sizes;
    cfg.strategy = canonical_strategy(cfg.strategy);
    return cfg;
  }
};

struct ConcentrationFlags {
  ConcentrationConfig flag;
  std::string config_path;
  bool exact = false;

  CLI::Option* min_qubits = nullptr;
  CLI::Option* max_qubits = nullptr;
  CLI::Option* total_points = nullptr;
  CLI::Option* shots = nullptr;
  CLI::Option* exact_flag = nullptr;
  CLI::Option* test_points = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* train_sizes = nullptr;
  CLI::Option* n_init = nullptr;
  CLI::Option* anchors = nullptr;
  CLI::Option* c_value = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* out_dir = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    min_qubits =
        cmd->add_option("--min-qubits", flag.min_qubits, "first qubit count");
    max_qubits =
        cmd->add_option("--max-qubits", flag.max_qubits, "last qubit count");
    total_points = cmd->add_option("--points", flag.total_points,
                                   "synthetic points per qubit count");
    shots = cmd->add_option("--shots", flag.shots,
                            "measurement shots per kernel entry");
    exact_flag = cmd->add_flag("--exact", exact,
                               "exact kernel expectation values (shots 0)");
    exact_flag->excludes(shots);
    shots->excludes(exact_flag);
    test_points =
        cmd->add_option("--test-points", flag.test_points, "held-out points");
    seed = cmd->add_option("--seed", flag.seed, "random seed");
    train_sizes = cmd->add_option("--sizes", flag.train_sizes,
                                  "training sizes (comma-separated)")
                      ->delimiter(',');
    n_init = cmd->add_option("--n-init", flag.n_init,
                             "reference size for the relative test loss");
    anchors = cmd->add_option("--anchors", flag.anchors,
                              "teacher anchor points");
    c_value = cmd->add_option("--c", flag.c_value, "regularization C");
    workers = cmd->add_option("--workers", flag.workers, "worker threads");
    out_dir = cmd->add_option("--out", flag.out_dir, "output directory");
  }

  ConcentrationConfig resolve() const {
    ConcentrationConfig cfg;
    if (!config_path.empty()) {
      cfg = ConcentrationConfig::from_json(slurp(config_path));
    }
    if (min_qubits->count() > 0) cfg.min_qubits = flag.min_qubits;
    if (max_qubits->count() > 0) cfg.max_qubits = flag.max_qubits;
    if (total_points->count() > 0) cfg.total_points = flag.total_points;
    if (shots->count() > 0) cfg.shots = flag.shots;
    if (exact_flag->count() > 0) cfg.shots = 0;
    if (test_points->count() > 0) cfg.test_points = flag.test_points;
    if (seed->count() > 0) cfg.seed = flag.seed;
    if (train_sizes->count() > 0) cfg.train_sizes = flag.train_sizes;
    if (n_init->count() > 0) cfg.n_init = flag.n_init;
    if (anchors->count() > 0) cfg.anchors = flag.anchors;
    if (c_value->count() > 0) cfg.c_value = flag.c_value;
    if (workers->count() > 0) cfg.workers = flag.workers;
    if (out_dir->count() > 0) cfg.out_dir = flag.out_dir;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-kernel multiclass SVM experiment runner"};
  app.require_subcommand(1);

  ExperimentFlags kernel_matrix_flags, crossvalidate_flags, evaluate_flags,
      learning_curve_flags, generalization_flags;
  ConcentrationFlags concentration_flags;

  CLI::App* kernel_matrix = app.add_subcommand(
      "kernel-matrix", "compute and export Gram matrices");
  kernel_matrix_flags.attach(kernel_matrix);
  CLI::App* crossvalidate = app.add_subcommand(
      "crossvalidate", "stratified k-fold accuracy per kernel");
  crossvalidate_flags.attach(crossvalidate);
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "holdout evaluation with full classification metrics");
  evaluate_flags.attach(evaluate);
  CLI::App* learning_curve = app.add_subcommand(
      "learning-curve", "accuracy versus training size");
  learning_curve_flags.attach(learning_curve);
  CLI::App* concentration = app.add_subcommand(
      "concentration", "kernel concentration study on synthetic data");
  concentration_flags.attach(concentration);
  CLI::App* generalization = app.add_subcommand(
      "generalization", "kernel complexity and generalization bounds");
  generalization_flags.attach(generalization);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    nlohmann::ordered_json result;
    if (app.got_subcommand(kernel_matrix)) {
      result = qksvm::cli::cmd_kernel_matrix(kernel_matrix_flags.resolve());
    } else if (app.got_subcommand(crossvalidate)) {
      result = qksvm::cli::cmd_crossvalidate(crossvalidate_flags.resolve());
    } else if (app.got_subcommand(evaluate)) {
      result = qksvm::cli::cmd_evaluate(evaluate_flags.resolve());
    } else if (app.got_subcommand(learning_curve)) {
      result = qksvm::cli::cmd_learning_curve(learning_curve_flags.resolve());
    } else if (app.got_subcommand(concentration)) {
      result = qksvm::cli::cmd_concentration(concentration_flags.resolve());
    } else if (app.got_subcommand(generalization)) {
      result = qksvm::cli::cmd_generalization(generalization_flags.resolve());
    }
    std::cout << result.dump(2) << std::endl;
  } catch (const qksvm::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
