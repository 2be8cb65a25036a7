// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "qksvm/cli/pipeline.hpp"
#include "qksvm/data/split.hpp"
#include "qksvm/kernels/gram.hpp"
#include "qksvm/kernels/gram_io.hpp"
#include "qksvm/metrics/classification.hpp"
#include "qksvm/metrics/generalization.hpp"
#include "qksvm/metrics/report_io.hpp"
#include "qksvm/metrics/roc.hpp"
#include "qksvm/svm/smo.hpp"
#include "qksvm/util/errors.hpp"
#include "qksvm/util/parallel.hpp"
#include "qksvm/util/rng.hpp"

namespace qksvm::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require_data(out.good(), "cannot open '" + path.string() + "' for writing");
  out << text;
  require_data(out.good(), "failed to write '" + path.string() + "'");
}

// Shortest decimal text that round-trips the value; stable across platforms
// for the byte-identical output guarantee.
std::string num(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string noise_tag(double p) {
  std::ostringstream out;
  out << p;
  return out.str();
}

std::vector<int> iota_indices(int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

double sample_std(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / double(values.size() - 1));
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / double(values.size());
}

// Creates out_dir (plus subdirectories) and writes the config echo with the
// dataset content digest.
void start_bundle(const std::string& out_dir, const std::string& command,
                  const std::string& config_json,
                  const std::string& data_digest,
                  const std::vector<std::string>& subdirs) {
  fs::create_directories(out_dir);
  for (const auto& sub : subdirs) fs::create_directories(fs::path(out_dir) / sub);
  ordered_json echo;
  echo["command"] = command;
  echo["config"] = ordered_json::parse(config_json);
  echo["data_digest"] = data_digest;
  write_text(fs::path(out_dir) / "config.json", echo.dump(2) + "\n");
}

void finish_bundle(const std::string& out_dir, const ordered_json& metrics) {
  write_text(fs::path(out_dir) / "metrics.json", metrics.dump(2) + "\n");
}

struct LoadedInput {
  data::Dataset dataset;
  std::string digest_hex;
};

LoadedInput load_and_digest(const ExperimentConfig& config) {
  LoadedInput in;
  in.dataset = load_input(config);
  in.digest_hex = hex64(dataset_digest(in.dataset));
  return in;
}

// Kernel specification for one experiment run. Derived seeds keep shot
// streams of separate Gram blocks distinct.
kernels::KernelSpec spec_for(const ExperimentConfig& config,
                             const std::string& id, int n_features,
                             double noise_p, std::uint64_t seed) {
  return resolve_kernel_spec(id, n_features, config.angle_scale, noise_p,
                             config.shots, seed);
}

ordered_json spec_summary(const kernels::KernelSpec& spec) {
  return ordered_json(spec.id());
}

void write_confusion_csv(const fs::path& path,
                         const metrics::ConfusionMatrix& cm,
                         const std::vector<std::string>& class_names) {
  std::ostringstream out;
  out << "true_class";
  for (const auto& name : class_names) out << ',' << name;
  out << '\n';
  for (int i = 0; i < cm.n_classes(); ++i) {
    out << class_names[static_cast<std::size_t>(i)];
    for (int j = 0; j < cm.n_classes(); ++j) out << ',' << cm.counts(i, j);
    out << '\n';
  }
  write_text(path, out.str());
}

}  // namespace

nlohmann::ordered_json cmd_kernel_matrix(const ExperimentConfig& config) {
  config.validate();
  const LoadedInput in = load_and_digest(config);
  start_bundle(config.out_dir, "kernel-matrix", config.to_json(),
               in.digest_hex, {"matrices"});

  // Whole-dataset statistics: the command exports the full Gram matrix, so
  // there is no holdout to protect.
  const SplitView view = transform_split(
      in.dataset, iota_indices(static_cast<int>(in.dataset.n_rows())), {},
      true, config.pca_threshold, config.pca_min_features);
  const std::string data_id =
      matrix_identity(in.dataset.provenance, view.train_x);

  ordered_json kernels_out = ordered_json::array();
  for (const auto& id : config.kernels) {
    const kernels::KernelSpec spec =
        spec_for(config, id, static_cast<int>(view.train_x.cols()),
                 config.noise_p, config.seed);
    const std::uint64_t digest = kernels::gram_digest(spec, data_id, data_id);
    const fs::path cache_path =
        fs::path(config.out_dir) / "matrices" / (id + ".gram");
    const fs::path csv_path =
        fs::path(config.out_dir) / "matrices" / (id + ".csv");

    kernels::KernelMatrix matrix;
    bool cache_hit = false;
    if (auto cached = kernels::read_gram_cache(cache_path.string(), digest)) {
      matrix.values = std::move(*cached);
      matrix.spec = spec;
      matrix.row_id = data_id;
      matrix.col_id = data_id;
      cache_hit = true;
    } else {
      matrix = kernels::gram_matrix(view.train_x, spec, config.workers,
                                    data_id);
      kernels::write_gram_cache(cache_path.string(), matrix);
    }
    kernels::write_gram_csv(csv_path.string(), matrix);
    const kernels::GramCheck check = kernels::check_gram(matrix.values);

    ordered_json entry;
    entry["kernel"] = id;
    entry["spec"] = spec_summary(spec);
    entry["rows"] = matrix.values.rows();
    entry["cache_hit"] = cache_hit;
    entry["digest"] = hex64(digest);
    entry["max_asymmetry"] = check.max_asymmetry;
    entry["max_diag_error"] = check.max_diag_error;
    entry["min_eigenvalue"] = check.min_eigenvalue;
    entry["csv"] = csv_path.string();
    kernels_out.push_back(entry);
  }

  ordered_json metrics;
  metrics["command"] = "kernel-matrix";
  metrics["dataset"] = in.dataset.provenance;
  metrics["rows"] = in.dataset.n_rows();
  metrics["input_features"] = in.dataset.n_features();
  metrics["features"] = view.train_x.cols();
  metrics["pca_components"] = view.pca_k;
  metrics["kernels"] = kernels_out;
  finish_bundle(config.out_dir, metrics);
  return metrics;
}

namespace {

// Fold accuracies for every C on precomputed kernel blocks.
struct FoldBlocks {
  Eigen::MatrixXd k_train;
  Eigen::MatrixXd k_val;
  std::vector<int> y_train;
  std::vector<int> y_val;
};

Eigen::MatrixXd grid_accuracy(const std::vector<FoldBlocks>& cuts,
                              const std::vector<double>& c_grid,
                              svm::Strategy strategy, int workers,
                              int n_classes) {
  Eigen::MatrixXd acc(static_cast<Eigen::Index>(c_grid.size()),
                      static_cast<Eigen::Index>(cuts.size()));
  parallel_for(c_grid.size() * cuts.size(), workers, [&](std::size_t cell) {
    const std::size_t ci = cell / cuts.size();
    const std::size_t f = cell % cuts.size();
    const FoldBlocks& cut = cuts[f];
    const svm::MulticlassModel model = train_multiclass(
        cut.k_train, cut.y_train, c_grid[ci], strategy, 1, n_classes);
    acc(static_cast<Eigen::Index>(ci), static_cast<Eigen::Index>(f)) =
        accuracy(cut.y_val, svm::predict_all(model, cut.k_val));
  });
  return acc;
}

std::size_t best_grid_row(const Eigen::MatrixXd& acc) {
  std::size_t best = 0;
  double best_mean = -1.0;
  for (Eigen::Index ci = 0; ci < acc.rows(); ++ci) {
    const double mean = acc.row(ci).mean();
    if (mean > best_mean) {
      best_mean = mean;
      best = static_cast<std::size_t>(ci);
    }
  }
  return best;
}

}  // namespace

nlohmann::ordered_json cmd_crossvalidate(const ExperimentConfig& config) {
  config.validate();
  const LoadedInput in = load_and_digest(config);
  start_bundle(config.out_dir, "crossvalidate", config.to_json(),
               in.digest_hex, {"tables"});

  const data::Dataset& ds = in.dataset;
  const int m = static_cast<int>(ds.n_rows());
  const int l = ds.n_classes();
  const svm::Strategy strategy = svm::strategy_from_name(config.strategy);
  const data::SplitPlan plan =
      data::stratified_kfold(ds, config.folds, config.seed);
  const auto n_folds = plan.folds.size();

  // Fold feature views are kernel independent; build them once.
  std::vector<SplitView> views;
  SplitView whole;
  if (config.fit_on_all) {
    whole = transform_split(ds, iota_indices(m), {}, true,
                            config.pca_threshold, config.pca_min_features);
  } else {
    views.reserve(n_folds);
    for (const auto& val : plan.folds) {
      views.push_back(transform_split(ds, complement(m, val), val, false,
                                      config.pca_threshold,
                                      config.pca_min_features));
    }
  }

  ordered_json kernels_out = ordered_json::array();
  std::ostringstream best_csv;
  best_csv << "kernel,fold,accuracy\n";
  std::ostringstream grid_csv;
  grid_csv << "kernel,c,fold,accuracy\n";

  for (const auto& id : config.kernels) {
    std::vector<FoldBlocks> cuts(n_folds);
    if (config.fit_on_all) {
      const std::string data_id =
          matrix_identity(ds.provenance, whole.train_x);
      const kernels::KernelSpec spec =
          spec_for(config, id, static_cast<int>(whole.train_x.cols()),
                   config.noise_p, config.seed);
      const Eigen::MatrixXd full =
          kernels::gram_matrix(whole.train_x, spec, config.workers, data_id)
              .values;
      for (std::size_t f = 0; f < n_folds; ++f) {
        const std::vector<int>& val = plan.folds[f];
        const std::vector<int> train = complement(m, val);
        cuts[f].k_train = gather(full, train, train);
        cuts[f].k_val = gather(full, val, train);
        cuts[f].y_train = gather_labels(ds.labels, train);
        cuts[f].y_val = gather_labels(ds.labels, val);
      }
    } else {
      for (std::size_t f = 0; f < n_folds; ++f) {
        const SplitView& view = views[f];
        const int n_features = static_cast<int>(view.train_x.cols());
        const kernels::KernelSpec spec_train =
            spec_for(config, id, n_features, config.noise_p,
                     derive_seed(config.seed, f, 0));
        const kernels::KernelSpec spec_val =
            spec_for(config, id, n_features, config.noise_p,
                     derive_seed(config.seed, f, 1));
        const std::string train_id = matrix_identity(
            ds.provenance + ":fold" + std::to_string(f), view.train_x);
        const std::string val_id = matrix_identity(
            ds.provenance + ":val" + std::to_string(f), view.test_x);
        cuts[f].k_train = kernels::gram_matrix(view.train_x, spec_train,
                                               config.workers, train_id)
                              .values;
        cuts[f].k_val =
            kernels::gram_matrix(view.test_x, view.train_x, spec_val,
                                 config.workers, val_id, train_id)
                .values;
        cuts[f].y_train = view.train_y;
        cuts[f].y_val = view.test_y;
      }
    }

    const Eigen::MatrixXd acc =
        grid_accuracy(cuts, config.c_grid, strategy, config.workers, l);
    const std::size_t best = best_grid_row(acc);

    ordered_json grid = ordered_json::array();
    for (std::size_t ci = 0; ci < config.c_grid.size(); ++ci) {
      ordered_json row;
      row["c"] = config.c_grid[ci];
      row["mean_accuracy"] = acc.row(static_cast<Eigen::Index>(ci)).mean();
      ordered_json folds = ordered_json::array();
      for (Eigen::Index f = 0; f < acc.cols(); ++f) {
        folds.push_back(acc(static_cast<Eigen::Index>(ci), f));
        grid_csv << id << ',' << num(config.c_grid[ci]) << ',' << f << ','
                 << num(acc(static_cast<Eigen::Index>(ci), f)) << '\n';
      }
      row["fold_accuracy"] = folds;
      grid.push_back(row);
    }

    ordered_json entry;
    entry["kernel"] = id;
    entry["best_c"] = config.c_grid[best];
    entry["mean_accuracy"] =
        acc.row(static_cast<Eigen::Index>(best)).mean();
    ordered_json folds = ordered_json::array();
    for (Eigen::Index f = 0; f < acc.cols(); ++f) {
      folds.push_back(acc(static_cast<Eigen::Index>(best), f));
      best_csv << id << ',' << f << ','
               << num(acc(static_cast<Eigen::Index>(best), f)) << '\n';
    }
    entry["fold_accuracy"] = folds;
    entry["grid"] = grid;
    kernels_out.push_back(entry);
  }

  write_text(fs::path(config.out_dir) / "tables" / "crossvalidate.csv",
             best_csv.str());
  write_text(fs::path(config.out_dir) / "tables" / "crossvalidate_grid.csv",
             grid_csv.str());

  ordered_json metrics;
  metrics["command"] = "crossvalidate";
  metrics["dataset"] = ds.provenance;
  metrics["rows"] = m;
  metrics["folds"] = static_cast<int>(n_folds);
  metrics["strategy"] = config.strategy;
  metrics["fit_on_all"] = config.fit_on_all;
  if (config.fit_on_all) {
    metrics["pca_components"] = whole.pca_k;
  } else {
    ordered_json per_fold = ordered_json::array();
    for (const auto& view : views) per_fold.push_back(view.pca_k);
    metrics["pca_components"] = per_fold;
  }
  metrics["kernels"] = kernels_out;
  finish_bundle(config.out_dir, metrics);
  return metrics;
}

nlohmann::ordered_json cmd_evaluate(const ExperimentConfig& config) {
  config.validate();
  const LoadedInput in = load_and_digest(config);
  start_bundle(config.out_dir, "evaluate", config.to_json(), in.digest_hex,
               {"tables"});

  const data::Dataset& ds = in.dataset;
  const int l = ds.n_classes();
  const svm::Strategy strategy = svm::strategy_from_name(config.strategy);
  const data::SplitPlan split =
      data::stratified_split(ds, config.test_fraction, config.seed);
  const SplitView view = transform_split(
      ds, split.train_indices, split.test_indices, config.fit_on_all,
      config.pca_threshold, config.pca_min_features);
  const int n_features = static_cast<int>(view.train_x.cols());
  const std::string train_id =
      matrix_identity(ds.provenance + ":train", view.train_x);
  const std::string test_id =
      matrix_identity(ds.provenance + ":test", view.test_x);

  // One run per noise level; classical kernels are noise free and run once.
  std::vector<double> levels;
  if (config.noise_sweep.empty()) {
    levels.push_back(config.noise_p);
  } else {
    levels.push_back(0.0);
    levels.insert(levels.end(), config.noise_sweep.begin(),
                  config.noise_sweep.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  }

  ordered_json results = ordered_json::array();
  for (const auto& id : config.kernels) {
    const std::vector<double> kernel_levels =
        is_quantum_kernel_id(id) ? levels : std::vector<double>{0.0};
    for (double p : kernel_levels) {
      const kernels::KernelSpec spec =
          spec_for(config, id, n_features, p, config.seed);
      kernels::KernelSpec spec_test = spec;
      spec_test.seed = derive_seed(config.seed, 1, 0);

      const Eigen::MatrixXd k_train =
          kernels::gram_matrix(view.train_x, spec, config.workers, train_id)
              .values;
      const CGridResult grid =
          select_c(k_train, view.train_y, config.c_grid, config.folds,
                   strategy, config.seed, config.workers, l);
      const svm::MulticlassModel model = train_multiclass(
          k_train, view.train_y, grid.best_c, strategy, config.workers, l);
      const Eigen::MatrixXd k_test =
          kernels::gram_matrix(view.test_x, view.train_x, spec_test,
                               config.workers, test_id, train_id)
              .values;
      const std::vector<int> predicted = svm::predict_all(model, k_test);
      const Eigen::MatrixXd scores = decision_matrix(model, k_test);

      // Test accuracy of every grid C. The headline numbers use the
      // cross-validated C; the per-C view shows what the grid can reach when
      // the regularization strength is tuned.
      std::vector<double> grid_test(config.c_grid.size());
      parallel_for(config.c_grid.size(), config.workers, [&](std::size_t ci) {
        const svm::MulticlassModel grid_model =
            train_multiclass(k_train, view.train_y, config.c_grid[ci],
                             strategy, 1, l);
        grid_test[ci] =
            accuracy(view.test_y, svm::predict_all(grid_model, k_test));
      });

      const metrics::ConfusionMatrix cm =
          metrics::confusion(view.test_y, predicted, l);
      const metrics::MetricsReport report =
          metrics::classification_metrics(cm);
      const metrics::RocReport roc =
          metrics::roc_curves(view.test_y, scores, l);

      const std::string stem =
          p > 0.0 ? id + "_noise" + noise_tag(p) : id;
      write_roc_csv(
          (fs::path(config.out_dir) / "tables" / ("roc_" + stem + ".csv"))
              .string(),
          roc, ds.class_names);
      write_confusion_csv(
          fs::path(config.out_dir) / "tables" / ("confusion_" + stem + ".csv"),
          cm, ds.class_names);

      ordered_json entry;
      entry["kernel"] = id;
      entry["noise"] = p;
      entry["spec"] = spec_summary(spec);
      entry["best_c"] = grid.best_c;
      entry["cv_mean_accuracy"] = grid.best_mean;
      ordered_json cv_folds = ordered_json::array();
      for (double a : grid.best_fold_accuracy) cv_folds.push_back(a);
      entry["cv_fold_accuracy"] = cv_folds;
      entry["accuracy"] = report.accuracy;
      ordered_json grid_rows = ordered_json::array();
      double best_grid = 0.0;
      for (std::size_t ci = 0; ci < config.c_grid.size(); ++ci) {
        ordered_json row;
        row["c"] = config.c_grid[ci];
        row["test_accuracy"] = grid_test[ci];
        grid_rows.push_back(row);
        best_grid = std::max(best_grid, grid_test[ci]);
      }
      entry["grid_test_accuracy"] = grid_rows;
      entry["best_grid_test_accuracy"] = best_grid;
      entry["metrics"] =
          ordered_json::parse(metrics::metrics_to_json(report, ds.class_names));
      entry["roc"] =
          ordered_json::parse(metrics::roc_to_json(roc, ds.class_names));
      entry["confusion"] =
          ordered_json::parse(metrics::confusion_to_json(cm, ds.class_names));
      ordered_json warnings = ordered_json::array();
      for (const auto& w : model.warnings) warnings.push_back(w);
      entry["warnings"] = warnings;
      results.push_back(entry);
    }
  }

  ordered_json metrics_doc;
  metrics_doc["command"] = "evaluate";
  metrics_doc["dataset"] = ds.provenance;
  metrics_doc["train_rows"] = static_cast<int>(split.train_indices.size());
  metrics_doc["test_rows"] = static_cast<int>(split.test_indices.size());
  metrics_doc["features"] = n_features;
  metrics_doc["pca_components"] = view.pca_k;
  metrics_doc["strategy"] = config.strategy;
  metrics_doc["fit_on_all"] = config.fit_on_all;
  metrics_doc["results"] = results;
  finish_bundle(config.out_dir, metrics_doc);
  return metrics_doc;
}

nlohmann::ordered_json cmd_learning_curve(const ExperimentConfig& config) {
  config.validate();
  const LoadedInput in = load_and_digest(config);
  start_bundle(config.out_dir, "learning-curve", config.to_json(),
               in.digest_hex, {"tables"});

  const data::Dataset& ds = in.dataset;
  const int m = static_cast<int>(ds.n_rows());
  const int l = ds.n_classes();
  const svm::Strategy strategy = svm::strategy_from_name(config.strategy);
  const data::SplitPlan plan =
      data::stratified_kfold(ds, config.folds, config.seed);
  const auto n_folds = plan.folds.size();
  const auto n_sizes = config.sizes.size();

  std::vector<SplitView> views;
  SplitView whole;
  if (config.fit_on_all) {
    whole = transform_split(ds, iota_indices(m), {}, true,
                            config.pca_threshold, config.pca_min_features);
  } else {
    views.reserve(n_folds);
    for (const auto& val : plan.folds) {
      views.push_back(transform_split(ds, complement(m, val), val, false,
                                      config.pca_threshold,
                                      config.pca_min_features));
    }
  }

  ordered_json kernels_out = ordered_json::array();
  std::ostringstream csv;
  csv << "kernel,fraction,train_size_mean,train_accuracy_mean,"
         "train_accuracy_std,test_accuracy_mean,test_accuracy_std\n";

  for (const auto& id : config.kernels) {
    // Subsampled kernel blocks per (fold, size), shared by every C.
    struct Cell {
      Eigen::MatrixXd k_train;
      Eigen::MatrixXd k_val;
      std::vector<int> y_train;
      std::vector<int> y_val;
      int train_size = 0;
    };
    std::vector<std::vector<Cell>> cells(n_folds,
                                         std::vector<Cell>(n_sizes));

    Eigen::MatrixXd full;
    if (config.fit_on_all) {
      const kernels::KernelSpec spec =
          spec_for(config, id, static_cast<int>(whole.train_x.cols()),
                   config.noise_p, config.seed);
      full = kernels::gram_matrix(whole.train_x, spec, config.workers,
                                  matrix_identity(ds.provenance,
                                                  whole.train_x))
                 .values;
    }

    for (std::size_t f = 0; f < n_folds; ++f) {
      const std::vector<int>& val = plan.folds[f];
      const std::vector<int> pool = complement(m, val);
      Eigen::MatrixXd k_pool;
      Eigen::MatrixXd k_val_pool;
      std::vector<int> y_pool;
      std::vector<int> y_val;
      if (config.fit_on_all) {
        k_pool = gather(full, pool, pool);
        k_val_pool = gather(full, val, pool);
        y_pool = gather_labels(ds.labels, pool);
        y_val = gather_labels(ds.labels, val);
      } else {
        const SplitView& view = views[f];
        const int n_features = static_cast<int>(view.train_x.cols());
        const kernels::KernelSpec spec_train =
            spec_for(config, id, n_features, config.noise_p,
                     derive_seed(config.seed, f, 0));
        const kernels::KernelSpec spec_val =
            spec_for(config, id, n_features, config.noise_p,
                     derive_seed(config.seed, f, 1));
        const std::string train_id = matrix_identity(
            ds.provenance + ":fold" + std::to_string(f), view.train_x);
        const std::string val_id = matrix_identity(
            ds.provenance + ":val" + std::to_string(f), view.test_x);
        k_pool = kernels::gram_matrix(view.train_x, spec_train,
                                      config.workers, train_id)
                     .values;
        k_val_pool = kernels::gram_matrix(view.test_x, view.train_x, spec_val,
                                          config.workers, val_id, train_id)
                         .values;
        y_pool = view.train_y;
        y_val = view.test_y;
      }

      const std::vector<int> val_rows =
          iota_indices(static_cast<int>(val.size()));
      for (std::size_t si = 0; si < n_sizes; ++si) {
        const double fraction = config.sizes[si];
        const std::vector<int> sub =
            fraction == 1.0
                ? iota_indices(static_cast<int>(y_pool.size()))
                : stratified_subsample(y_pool, fraction,
                                       derive_seed(config.seed, f + 1,
                                                   si + 1));
        Cell& cell = cells[f][si];
        cell.k_train = gather(k_pool, sub, sub);
        cell.k_val = gather(k_val_pool, val_rows, sub);
        cell.y_train = gather_labels(y_pool, sub);
        cell.y_val = y_val;
        cell.train_size = static_cast<int>(sub.size());
      }
    }

    // Accuracies per (C, size, fold).
    const auto n_c = config.c_grid.size();
    std::vector<double> train_acc(n_c * n_sizes * n_folds);
    std::vector<double> test_acc(n_c * n_sizes * n_folds);
    parallel_for(n_c * n_sizes * n_folds, config.workers,
                 [&](std::size_t cell_id) {
                   const std::size_t ci = cell_id / (n_sizes * n_folds);
                   const std::size_t si =
                       (cell_id / n_folds) % n_sizes;
                   const std::size_t f = cell_id % n_folds;
                   const Cell& cell = cells[f][si];
                   const svm::MulticlassModel model = train_multiclass(
                       cell.k_train, cell.y_train, config.c_grid[ci],
                       strategy, 1, l);
                   train_acc[cell_id] = accuracy(
                       cell.y_train, svm::predict_all(model, cell.k_train));
                   test_acc[cell_id] = accuracy(
                       cell.y_val, svm::predict_all(model, cell.k_val));
                 });

    const auto at = [&](const std::vector<double>& acc, std::size_t ci,
                        std::size_t si, std::size_t f) {
      return acc[ci * n_sizes * n_folds + si * n_folds + f];
    };

    // The C that maximizes mean test accuracy at the last scheduled size,
    // ties to the earlier grid entry.
    std::size_t best_ci = 0;
    double best_final = -1.0;
    for (std::size_t ci = 0; ci < n_c; ++ci) {
      double mean = 0.0;
      for (std::size_t f = 0; f < n_folds; ++f) {
        mean += at(test_acc, ci, n_sizes - 1, f);
      }
      mean /= double(n_folds);
      if (mean > best_final) {
        best_final = mean;
        best_ci = ci;
      }
    }

    ordered_json rows = ordered_json::array();
    for (std::size_t si = 0; si < n_sizes; ++si) {
      std::vector<double> tr, te;
      double size_sum = 0.0;
      for (std::size_t f = 0; f < n_folds; ++f) {
        tr.push_back(at(train_acc, best_ci, si, f));
        te.push_back(at(test_acc, best_ci, si, f));
        size_sum += cells[f][si].train_size;
      }
      const double tr_mean = mean_of(tr);
      const double te_mean = mean_of(te);
      const double size_mean = size_sum / double(n_folds);
      ordered_json row;
      row["fraction"] = config.sizes[si];
      row["train_size_mean"] = size_mean;
      row["train_accuracy_mean"] = tr_mean;
      row["train_accuracy_std"] = sample_std(tr, tr_mean);
      row["test_accuracy_mean"] = te_mean;
      row["test_accuracy_std"] = sample_std(te, te_mean);
      rows.push_back(row);
      csv << id << ',' << num(config.sizes[si]) << ',' << num(size_mean)
          << ',' << num(tr_mean) << ',' << num(sample_std(tr, tr_mean)) << ','
          << num(te_mean) << ',' << num(sample_std(te, te_mean)) << '\n';
    }

    ordered_json entry;
    entry["kernel"] = id;
    entry["c"] = config.c_grid[best_ci];
    entry["final_test_accuracy_mean"] = best_final;
    entry["rows"] = rows;
    kernels_out.push_back(entry);
  }

  write_text(fs::path(config.out_dir) / "tables" / "learning_curve.csv",
             csv.str());

  ordered_json metrics;
  metrics["command"] = "learning-curve";
  metrics["dataset"] = ds.provenance;
  metrics["rows"] = m;
  metrics["folds"] = static_cast<int>(n_folds);
  metrics["strategy"] = config.strategy;
  metrics["fit_on_all"] = config.fit_on_all;
  metrics["kernels"] = kernels_out;
  finish_bundle(config.out_dir, metrics);
  return metrics;
}

nlohmann::ordered_json cmd_concentration(const ConcentrationConfig& config) {
  config.validate();
  start_bundle(config.out_dir, "concentration", config.to_json(),
               "synthetic", {"tables"});

  constexpr double kTwoPi = 6.283185307179586476925286766559;
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "qubits,size,train_loss,test_loss,theta\n";

  const int pool_size = config.total_points - config.test_points;
  for (int n_qubits = config.min_qubits; n_qubits <= config.max_qubits;
       ++n_qubits) {
    const auto nq = static_cast<std::uint64_t>(n_qubits);

    // Synthetic inputs, one feature per qubit, uniform on [0, 2pi).
    Eigen::MatrixXd points(config.total_points, n_qubits);
    {
      Rng rng = Rng::stream(config.seed, {nq, 0});
      for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (Eigen::Index j = 0; j < points.cols(); ++j) {
          points(i, j) = rng.uniform(0.0, kTwoPi);
        }
      }
    }
    Eigen::MatrixXd anchors(config.anchors, n_qubits);
    {
      Rng rng = Rng::stream(config.seed, {nq, 1});
      for (Eigen::Index i = 0; i < anchors.rows(); ++i) {
        for (Eigen::Index j = 0; j < anchors.cols(); ++j) {
          anchors(i, j) = rng.uniform(0.0, kTwoPi);
        }
      }
    }

    // Teacher labels: a randomly weighted exact-kernel expansion over the
    // anchors, split at its median so both classes are populated. Redrawn
    // weights guard against degenerate score ties at the median.
    const kernels::FeatureMapSpec map{kernels::FeatureMapKind::PauliZ,
                                      n_qubits, 1.0};
    Eigen::VectorXd labels(config.total_points);
    bool both_classes = false;
    for (std::uint64_t attempt = 0; attempt < 32 && !both_classes;
         ++attempt) {
      Rng rng = Rng::stream(config.seed, {nq, 2, attempt});
      Eigen::VectorXd weights(config.anchors);
      for (Eigen::Index a = 0; a < weights.size(); ++a) {
        weights[a] = rng.uniform(-1.0, 1.0);
      }
      Eigen::VectorXd score(config.total_points);
      parallel_for(static_cast<std::size_t>(config.total_points),
                   config.workers, [&](std::size_t i) {
                     double s = 0.0;
                     for (Eigen::Index a = 0; a < anchors.rows(); ++a) {
                       s += weights[a] *
                            kernels::quantum_kernel_exact(
                                map,
                                points.row(static_cast<Eigen::Index>(i))
                                    .transpose(),
                                anchors.row(a).transpose());
                     }
                     score[static_cast<Eigen::Index>(i)] = s;
                   });
      std::vector<double> sorted(score.data(),
                                 score.data() + score.size());
      std::sort(sorted.begin(), sorted.end());
      const std::size_t half = sorted.size() / 2;
      const double median = sorted.size() % 2 == 1
                                ? sorted[half]
                                : 0.5 * (sorted[half - 1] + sorted[half]);
      int positives = 0;
      for (Eigen::Index i = 0; i < score.size(); ++i) {
        labels[i] = score[i] > median ? 1.0 : -1.0;
        positives += labels[i] > 0.0 ? 1 : 0;
      }
      both_classes = positives > 0 && positives < config.total_points;
    }
    require_numerical(both_classes,
                      "teacher labeling collapsed to a single class");

    // Shot-sampled kernel blocks over the pool and the held-out test rows.
    kernels::KernelSpec spec = kernels::KernelSpec::quantum(
        kernels::FeatureMapKind::PauliZ, n_qubits);
    spec.shots = config.shots;
    spec.seed = derive_seed(config.seed, nq, 0);
    kernels::KernelSpec spec_cross = spec;
    spec_cross.seed = derive_seed(config.seed, nq, 1);

    const Eigen::MatrixXd pool = points.topRows(pool_size);
    const Eigen::MatrixXd test = points.bottomRows(config.test_points);
    const std::string pool_id =
        "concentration:pool:q" + std::to_string(n_qubits);
    const std::string test_id =
        "concentration:test:q" + std::to_string(n_qubits);
    const Eigen::MatrixXd k_pool =
        kernels::gram_matrix(pool, spec, config.workers, pool_id).values;
    const Eigen::MatrixXd k_cross =
        kernels::gram_matrix(test, pool, spec_cross, config.workers, test_id,
                             pool_id)
            .values;

    std::vector<double> train_losses, test_losses;
    for (int n : config.train_sizes) {
      const Eigen::MatrixXd k_n = k_pool.topLeftCorner(n, n);
      const Eigen::VectorXd y_n = labels.head(n);
      const svm::BinaryModel model =
          svm::smo_train_binary(k_n, y_n, config.c_value, 1e-3, 10000);

      int train_errors = 0;
      for (int i = 0; i < n; ++i) {
        const double f =
            svm::binary_decision(model, k_n.row(i).transpose());
        if ((f >= 0.0 ? 1.0 : -1.0) != y_n[i]) ++train_errors;
      }
      int test_errors = 0;
      for (int t = 0; t < config.test_points; ++t) {
        const double f = svm::binary_decision(
            model, k_cross.row(t).head(n).transpose());
        if ((f >= 0.0 ? 1.0 : -1.0) != labels[pool_size + t]) ++test_errors;
      }
      train_losses.push_back(double(train_errors) / double(n));
      test_losses.push_back(double(test_errors) /
                            double(config.test_points));
    }

    double reference = -1.0;
    for (std::size_t s = 0; s < config.train_sizes.size(); ++s) {
      if (config.train_sizes[s] == config.n_init) reference = test_losses[s];
    }
    for (std::size_t s = 0; s < config.train_sizes.size(); ++s) {
      double theta;
      bool theta_defined = true;
      if (reference > 0.0) {
        theta = test_losses[s] / reference;
      } else if (test_losses[s] == 0.0) {
        theta = 1.0;
      } else {
        theta = std::numeric_limits<double>::infinity();
        theta_defined = false;
      }
      ordered_json row;
      row["qubits"] = n_qubits;
      row["size"] = config.train_sizes[s];
      row["train_loss"] = train_losses[s];
      row["test_loss"] = test_losses[s];
      if (theta_defined) {
        row["theta"] = theta;
      } else {
        row["theta"] = nullptr;
      }
      rows.push_back(row);
      csv << n_qubits << ',' << config.train_sizes[s] << ','
          << num(train_losses[s]) << ',' << num(test_losses[s]) << ','
          << (theta_defined ? num(theta) : std::string("inf")) << '\n';
    }
  }

  write_text(fs::path(config.out_dir) / "tables" / "concentration.csv",
             csv.str());

  ordered_json metrics;
  metrics["command"] = "concentration";
  metrics["label_construction"] =
      "reconstruction: binary labels are the sign of a randomly weighted "
      "exact-kernel expansion over random anchor points, split at the median "
      "score; losses are 0-1. The source study does not define its labeling "
      "or loss.";
  metrics["kernel"] = "qk-pauli-z";
  metrics["shots"] = config.shots;
  metrics["rows"] = rows;
  finish_bundle(config.out_dir, metrics);
  return metrics;
}

nlohmann::ordered_json cmd_generalization(const ExperimentConfig& config) {
  config.validate();
  const LoadedInput in = load_and_digest(config);
  start_bundle(config.out_dir, "generalization", config.to_json(),
               in.digest_hex, {"tables"});

  const data::Dataset& ds = in.dataset;
  const data::SplitPlan split =
      data::stratified_split(ds, config.test_fraction, config.seed);
  const SplitView view = transform_split(
      ds, split.train_indices, split.test_indices, config.fit_on_all,
      config.pca_threshold, config.pca_min_features);
  const std::string train_id =
      matrix_identity(ds.provenance + ":train", view.train_x);

  ordered_json kernels_out = ordered_json::array();
  std::ostringstream csv;
  csv << "kernel,frobenius_norm,rademacher_estimate,rademacher_std_error,"
         "upper_bound,sample_count\n";
  for (const auto& id : config.kernels) {
    const kernels::KernelSpec spec =
        spec_for(config, id, static_cast<int>(view.train_x.cols()),
                 config.noise_p, config.seed);
    const Eigen::MatrixXd k_train =
        kernels::gram_matrix(view.train_x, spec, config.workers, train_id)
            .values;
    const metrics::GeneralizationReport report =
        metrics::generalization_report(k_train, 1.0, 200, config.seed);

    ordered_json entry =
        ordered_json::parse(metrics::generalization_to_json(report));
    entry["kernel"] = id;
    entry["spec"] = spec_summary(spec);
    kernels_out.push_back(entry);
    csv << id << ',' << num(report.frobenius_norm) << ','
        << num(report.rademacher_estimate) << ','
        << num(report.rademacher_std_error) << ','
        << num(report.upper_bound) << ',' << report.sample_count << '\n';
  }

  write_text(fs::path(config.out_dir) / "tables" / "generalization.csv",
             csv.str());

  ordered_json metrics_doc;
  metrics_doc["command"] = "generalization";
  metrics_doc["dataset"] = ds.provenance;
  metrics_doc["train_rows"] = static_cast<int>(split.train_indices.size());
  metrics_doc["features"] = view.train_x.cols();
  metrics_doc["pca_components"] = view.pca_k;
  metrics_doc["kernels"] = kernels_out;
  finish_bundle(config.out_dir, metrics_doc);
  return metrics_doc;
}

}  // namespace qksvm::cli
