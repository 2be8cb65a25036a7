// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qksvm/cli/commands.hpp"
#include "qksvm/cli/config.hpp"
#include "qksvm/cli/pipeline.hpp"
#include "qksvm/data/dataset.hpp"
#include "qksvm/svm/model.hpp"
#include "qksvm/util/errors.hpp"
#include "qksvm/util/rng.hpp"

using namespace qksvm;
using namespace qksvm::cli;
using nlohmann::ordered_json;

namespace {

const std::string kDataDir = QKSVM_DATA_DIR;
const std::string kCliBin = QKSVM_CLI_BIN;

std::filesystem::path fresh_dir(const std::string& name) {
  const auto path = std::filesystem::temp_directory_path() / "qksvm_cli" / name;
  std::filesystem::remove_all(path);
  std::filesystem::create_directories(path);
  return path;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Runs the installed binary, captures stdout/stderr, returns the exit code.
struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::string& args, const std::string& tag) {
  const auto dir = fresh_dir("proc_" + tag);
  const auto out_path = dir / "stdout.txt";
  const auto err_path = dir / "stderr.txt";
  const std::string cmd = kCliBin + " " + args + " > " + out_path.string() +
                          " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.out = read_file(out_path);
  run.err = read_file(err_path);
  return run;
}

ExperimentConfig iris_config(const std::string& out_tag) {
  ExperimentConfig cfg;
  cfg.dataset = "iris";
  cfg.data_dir = kDataDir;
  cfg.kernels = {"qk-pauli-z"};
  cfg.out_dir = fresh_dir(out_tag).string();
  return cfg;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a qksvm::Error");
  return ErrorKind::Config;
}

// Two well-separated point clouds so every C value classifies perfectly.
Eigen::MatrixXd separable_gram(std::vector<int>* labels, int per_class) {
  Rng rng(7);
  const int m = 2 * per_class;
  Eigen::MatrixXd x(m, 2);
  for (int i = 0; i < m; ++i) {
    const int cls = i < per_class ? 1 : 2;
    x(i, 0) = (cls == 1 ? 10.0 : 0.0) + rng.uniform(-0.3, 0.3);
    x(i, 1) = (cls == 1 ? 0.0 : 10.0) + rng.uniform(-0.3, 0.3);
    labels->push_back(cls);
  }
  return x * x.transpose();
}

}  // namespace

// ===========================================================================
// Configuration parsing and validation
// ===========================================================================

TEST_CASE("experiment config json round trips every field") {
  ExperimentConfig cfg;
  cfg.dataset = "glass";
  cfg.schema = "custom.json";
  cfg.data_dir = "elsewhere";
  cfg.kernels = {"qk-full", "gaussian"};
  cfg.strategy = "crammer-singer";
  cfg.c_grid = {0.5, 5.0};
  cfg.seed = 11;
  cfg.workers = 3;
  cfg.out_dir = "bundle";
  cfg.shots = 4096;
  cfg.noise_p = 0.05;
  cfg.noise_sweep = {0.01, 0.2};
  cfg.folds = 4;
  cfg.test_fraction = 0.25;
  cfg.pca_threshold = 0.9;
  cfg.pca_min_features = 5;
  cfg.fit_on_all = true;
  cfg.angle_scale = 0.5;
  cfg.sizes = {0.5, 1.0};

  const ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
  CHECK(back.dataset == cfg.dataset);
  CHECK(back.schema == cfg.schema);
  CHECK(back.data_dir == cfg.data_dir);
  CHECK(back.kernels == cfg.kernels);
  CHECK(back.strategy == cfg.strategy);
  CHECK(back.c_grid == cfg.c_grid);
  CHECK(back.seed == cfg.seed);
  CHECK(back.workers == cfg.workers);
  CHECK(back.out_dir == cfg.out_dir);
  CHECK(back.shots == cfg.shots);
  CHECK(back.noise_p == cfg.noise_p);
  CHECK(back.noise_sweep == cfg.noise_sweep);
  CHECK(back.folds == cfg.folds);
  CHECK(back.test_fraction == cfg.test_fraction);
  CHECK(back.pca_threshold == cfg.pca_threshold);
  CHECK(back.pca_min_features == cfg.pca_min_features);
  CHECK(back.fit_on_all == cfg.fit_on_all);
  CHECK(back.angle_scale == cfg.angle_scale);
  CHECK(back.sizes == cfg.sizes);

  const ConcentrationConfig conc = ConcentrationConfig::from_json(
      ConcentrationConfig{}.to_json());
  CHECK(conc.min_qubits == 4);
  CHECK(conc.train_sizes == std::vector<int>{10, 30, 50, 70, 90, 110, 130});
}

TEST_CASE("unknown and mistyped config keys are rejected by name") {
  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"datset": "iris"})"), Error);
  CHECK(kind_of([] {
          ExperimentConfig::from_json(R"({"datset": "iris"})");
        }) == ErrorKind::Config);

  try {
    ExperimentConfig::from_json(R"({"folds": "five"})");
    FAIL("mistyped key accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("folds") != std::string::npos);
  }

  CHECK_THROWS_AS(ExperimentConfig::from_json("not json"), Error);
  CHECK_THROWS_AS(ConcentrationConfig::from_json(R"({"qubits": 4})"), Error);
}

TEST_CASE("experiment config validation rejects out-of-range settings") {
  const auto rejects = [](const std::function<void(ExperimentConfig&)>& tweak) {
    ExperimentConfig cfg;
    cfg.dataset = "iris";
    cfg.kernels = {"linear"};
    tweak(cfg);
    return kind_of([&] { cfg.validate(); }) == ErrorKind::Config;
  };

  CHECK(rejects([](ExperimentConfig& c) { c.dataset = ""; }));
  CHECK(rejects([](ExperimentConfig& c) { c.kernels = {}; }));
  CHECK(rejects([](ExperimentConfig& c) { c.kernels = {"quantum"}; }));
  CHECK(rejects([](ExperimentConfig& c) { c.strategy = "pairwise"; }));
  CHECK(rejects([](ExperimentConfig& c) { c.c_grid = {1.0, 0.0}; }));
  CHECK(rejects([](ExperimentConfig& c) { c.workers = 0; }));
  CHECK(rejects([](ExperimentConfig& c) { c.shots = -1; }));
  CHECK(rejects([](ExperimentConfig& c) { c.noise_p = 1.5; }));
  CHECK(rejects([](ExperimentConfig& c) { c.noise_sweep = {-0.1}; }));
  CHECK(rejects([](ExperimentConfig& c) { c.folds = 1; }));
  CHECK(rejects([](ExperimentConfig& c) { c.test_fraction = 1.0; }));
  CHECK(rejects([](ExperimentConfig& c) { c.pca_threshold = 0.0; }));
  CHECK(rejects([](ExperimentConfig& c) { c.pca_min_features = 1; }));
  CHECK(rejects([](ExperimentConfig& c) { c.angle_scale = 0.0; }));
  CHECK(rejects([](ExperimentConfig& c) { c.sizes = {0.5, 1.2}; }));

  // An unknown kernel id names the alternatives.
  ExperimentConfig cfg;
  cfg.dataset = "iris";
  cfg.kernels = {"rbf"};
  try {
    cfg.validate();
    FAIL("unknown kernel accepted");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("rbf") != std::string::npos);
    CHECK(msg.find("qk-full") != std::string::npos);
    CHECK(msg.find("gaussian") != std::string::npos);
  }
}

TEST_CASE("concentration config validation rejects inconsistent settings") {
  const auto rejects =
      [](const std::function<void(ConcentrationConfig&)>& tweak) {
        ConcentrationConfig cfg;
        tweak(cfg);
        return kind_of([&] { cfg.validate(); }) == ErrorKind::Config;
      };

  ConcentrationConfig good;
  CHECK_NOTHROW(good.validate());
  CHECK(rejects([](ConcentrationConfig& c) { c.min_qubits = 0; }));
  CHECK(rejects([](ConcentrationConfig& c) { c.max_qubits = 3; }));
  CHECK(rejects([](ConcentrationConfig& c) { c.train_sizes = {30, 10}; }));
  CHECK(rejects([](ConcentrationConfig& c) {
    c.train_sizes = {10, 145};  // pool of 145 plus 20 test points > 150
  }));
  CHECK(rejects([](ConcentrationConfig& c) { c.n_init = 11; }));
  CHECK(rejects([](ConcentrationConfig& c) { c.anchors = 0; }));
  CHECK(rejects([](ConcentrationConfig& c) { c.c_value = 0.0; }));
  CHECK(rejects([](ConcentrationConfig& c) { c.shots = -5; }));
}

TEST_CASE("kernel identifiers resolve to the documented specifications") {
  const auto& ids = known_kernel_ids();
  CHECK(ids.size() == 10);
  int quantum = 0;
  for (const auto& id : ids) quantum += is_quantum_kernel_id(id) ? 1 : 0;
  CHECK(quantum == 6);
  CHECK(is_quantum_kernel_id("qk-pauli-y"));
  CHECK_FALSE(is_quantum_kernel_id("gaussian"));

  const auto spec = resolve_kernel_spec("qk-circular", 5, 0.5, 0.1, 0, 42);
  CHECK(spec.is_quantum());
  CHECK(spec.map().kind == kernels::FeatureMapKind::Circular);
  CHECK(spec.map().n_features == 5);
  CHECK(spec.map().angle_scale == 0.5);
  CHECK(spec.noise_p == 0.1);
  CHECK(spec.seed == 42);

  const auto sampled = resolve_kernel_spec("qk-full", 3, 1.0, 0.0, 2048, 7);
  CHECK(sampled.shots == 2048);
  CHECK(sampled.seed == 7);

  // Noise excludes shot sampling; the noisy path is exact expectation.
  CHECK_THROWS_AS(resolve_kernel_spec("qk-full", 3, 1.0, 0.1, 2048, 7),
                  Error);

  // Noise and shot settings apply to quantum kernels only.
  const auto gauss = resolve_kernel_spec("gaussian", 4, 1.0, 0.1, 2048, 42);
  CHECK_FALSE(gauss.is_quantum());
  CHECK(gauss.noise_p == 0.0);
  CHECK(gauss.shots == 0);
  CHECK(gauss.classical().kind == kernels::ClassicalKind::Gaussian);
  CHECK(gauss.classical().params.kappa == doctest::Approx(0.25));

  const auto sigm = resolve_kernel_spec("sigmoid", 8, 1.0, 0.0, 0, 0);
  CHECK(sigm.classical().params.kappa == doctest::Approx(0.125));
  CHECK(sigm.classical().params.offset == -1.0);

  const auto poly = resolve_kernel_spec("polynomial", 4, 1.0, 0.0, 0, 0);
  CHECK(poly.classical().params.degree == 3);
  CHECK(poly.classical().params.kappa == 1.0);

  CHECK_THROWS_AS(resolve_kernel_spec("rbf", 4, 1.0, 0.0, 0, 0), Error);
}

// ===========================================================================
// Pipeline helpers
// ===========================================================================

TEST_CASE("split transform fits statistics on the requested rows") {
  Rng rng(3);
  data::Dataset d;
  d.features.resize(40, 3);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 3; ++j) {
      d.features(i, j) = rng.uniform(0.0, 10.0) + 5.0 * j;
    }
    d.labels.push_back(1 + i % 2);
  }
  d.class_names = {"a", "b"};
  d.feature_names = {"f1", "f2", "f3"};

  std::vector<int> train_idx, test_idx;
  for (int i = 0; i < 30; ++i) train_idx.push_back(i);
  for (int i = 30; i < 40; ++i) test_idx.push_back(i);

  const SplitView v = transform_split(d, train_idx, test_idx, false, 0.85, 6);
  CHECK(v.pca_k == 0);  // three features stay below the PCA threshold
  CHECK(v.train_x.rows() == 30);
  CHECK(v.test_x.rows() == 10);
  CHECK(v.train_x.cols() == 3);
  CHECK(v.train_y.size() == 30);
  CHECK(v.test_y.size() == 10);

  for (int j = 0; j < 3; ++j) {
    const double mean = v.train_x.col(j).mean();
    const double var = v.train_x.col(j).squaredNorm() / 30.0 - mean * mean;
    CHECK(std::abs(mean) < 1e-9);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Fitting on all rows shifts the test projection.
  const SplitView w = transform_split(d, train_idx, test_idx, true, 0.85, 6);
  CHECK((v.test_x - w.test_x).cwiseAbs().maxCoeff() > 1e-6);

  const SplitView no_test = transform_split(d, train_idx, {}, false, 0.85, 6);
  CHECK(no_test.test_x.rows() == 0);
  CHECK(no_test.test_y.empty());
}

TEST_CASE("split transform applies pca above the feature threshold") {
  Rng rng(9);
  data::Dataset d;
  d.features.resize(60, 7);
  for (int i = 0; i < 60; ++i) {
    for (int j = 0; j < 7; ++j) {
      d.features(i, j) = rng.uniform(-1.0 - j, 1.0 + j);
    }
    d.labels.push_back(1 + i % 3);
  }
  d.class_names = {"a", "b", "c"};
  for (int j = 0; j < 7; ++j) d.feature_names.push_back("f");

  std::vector<int> train_idx;
  for (int i = 0; i < 60; ++i) train_idx.push_back(i);

  const SplitView v = transform_split(d, train_idx, {}, false, 0.85, 6);
  CHECK(v.pca_k >= 1);
  CHECK(v.pca_k < 7);
  CHECK(v.train_x.cols() == v.pca_k);

  // A threshold of one keeps the full basis.
  const SplitView full = transform_split(d, train_idx, {}, false, 1.0, 6);
  CHECK(full.pca_k == 7);
}

TEST_CASE("index helpers gather rows and build complements") {
  Eigen::MatrixXd k(4, 4);
  int v = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) k(i, j) = v++;
  }
  const Eigen::MatrixXd sub = gather(k, {3, 1}, {0, 2});
  CHECK(sub.rows() == 2);
  CHECK(sub(0, 0) == 12.0);
  CHECK(sub(0, 1) == 14.0);
  CHECK(sub(1, 0) == 4.0);
  CHECK(sub(1, 1) == 6.0);

  CHECK(complement(5, {1, 3}) == std::vector<int>{0, 2, 4});
  CHECK(complement(3, {}) == std::vector<int>{0, 1, 2});
  CHECK(complement(3, {0, 1, 2}).empty());

  CHECK(gather_labels({5, 6, 7, 8}, {2, 0}) == std::vector<int>{7, 5});
  CHECK(accuracy({1, 2, 3, 1}, {1, 2, 1, 1}) == doctest::Approx(0.75));
}

TEST_CASE("stratified subsampling keeps class balance and determinism") {
  std::vector<int> labels;
  for (int i = 0; i < 30; ++i) labels.push_back(1);
  for (int i = 0; i < 20; ++i) labels.push_back(2);
  for (int i = 0; i < 10; ++i) labels.push_back(3);

  const auto half = stratified_subsample(labels, 0.5, 4);
  CHECK(half.size() == 30);
  CHECK(std::is_sorted(half.begin(), half.end()));
  CHECK(std::adjacent_find(half.begin(), half.end()) == half.end());
  std::vector<int> counts(4, 0);
  for (int i : half) ++counts[static_cast<std::size_t>(labels[i])];
  CHECK(counts[1] == 15);
  CHECK(counts[2] == 10);
  CHECK(counts[3] == 5);

  CHECK(stratified_subsample(labels, 0.5, 4) == half);
  CHECK(stratified_subsample(labels, 0.5, 5) != half);

  // Tiny fractions still draw one row per class.
  const auto tiny = stratified_subsample(labels, 0.01, 4);
  CHECK(tiny.size() == 3);
  std::set<int> seen;
  for (int i : tiny) seen.insert(labels[i]);
  CHECK(seen.size() == 3);

  const auto all = stratified_subsample(labels, 1.0, 4);
  CHECK(all.size() == labels.size());
}

TEST_CASE("c selection is deterministic and ties go to the smaller c") {
  std::vector<int> labels;
  const Eigen::MatrixXd k = separable_gram(&labels, 15);
  const std::vector<double> grid = {0.1, 1.0, 10.0};

  const CGridResult a =
      select_c(k, labels, grid, 5, svm::Strategy::OneVsAll, 2, 1, 0);
  const CGridResult b =
      select_c(k, labels, grid, 5, svm::Strategy::OneVsAll, 2, 4, 0);

  CHECK(a.accuracy.rows() == 3);
  CHECK(a.accuracy.cols() == 5);
  CHECK(a.best_fold_accuracy.size() == 5);
  CHECK(a.best_c == b.best_c);
  CHECK(a.best_mean == b.best_mean);
  CHECK((a.accuracy - b.accuracy).cwiseAbs().maxCoeff() == 0.0);

  // Everything separates perfectly, so the tie resolves to the first C.
  CHECK(a.best_c == 0.1);
  CHECK(a.best_mean == doctest::Approx(1.0));
}

TEST_CASE("derived seeds separate gram blocks deterministically") {
  const std::uint64_t base = 77;
  CHECK(derive_seed(base, 1, 0) == derive_seed(base, 1, 0));
  CHECK(derive_seed(base, 1, 0) != derive_seed(base, 0, 1));
  CHECK(derive_seed(base, 1, 0) != derive_seed(base, 2, 0));
  CHECK(derive_seed(base, 1, 0) != base);
  CHECK(derive_seed(base, 1, 0) != derive_seed(base + 1, 1, 0));
}

// ===========================================================================
// Commands as library functions
// ===========================================================================

TEST_CASE("kernel matrix command caches grams and reports mercer checks") {
  ExperimentConfig cfg = iris_config("km");
  cfg.kernels = {"qk-pauli-z", "gaussian"};

  const ordered_json first = cmd_kernel_matrix(cfg);
  REQUIRE(first.at("kernels").size() == 2);
  const auto& qk = first.at("kernels").at(0);
  CHECK(qk.at("kernel") == "qk-pauli-z");
  CHECK(qk.at("rows") == 150);
  CHECK(qk.at("cache_hit") == false);
  CHECK(qk.at("digest").get<std::string>().size() == 16);
  CHECK(qk.at("max_asymmetry").get<double>() <= 1e-10);
  CHECK(qk.at("max_diag_error").get<double>() <= 1e-10);
  CHECK(qk.at("min_eigenvalue").get<double>() >= -1e-8 * 150);
  CHECK(std::filesystem::exists(qk.at("csv").get<std::string>()));

  // A second run with the same config reuses the cached matrices.
  const ordered_json second = cmd_kernel_matrix(cfg);
  CHECK(second.at("kernels").at(0).at("cache_hit") == true);
  CHECK(second.at("kernels").at(0).at("digest") ==
        first.at("kernels").at(0).at("digest"));
  CHECK(std::filesystem::exists(std::filesystem::path(cfg.out_dir) /
                                "metrics.json"));
  CHECK(std::filesystem::exists(std::filesystem::path(cfg.out_dir) /
                                "config.json"));
}

TEST_CASE("evaluate reports consistent metrics independent of workers") {
  ExperimentConfig cfg = iris_config("eval_w1");
  cfg.seed = 1;

  const ordered_json doc = cmd_evaluate(cfg);
  CHECK(doc.at("train_rows") == 105);
  CHECK(doc.at("test_rows") == 45);
  const auto& r = doc.at("results").at(0);
  CHECK(r.at("cv_fold_accuracy").size() == 5);
  const double best_c = r.at("best_c").get<double>();
  CHECK(std::find(cfg.c_grid.begin(), cfg.c_grid.end(), best_c) !=
        cfg.c_grid.end());

  // Micro averaging collapses to plain accuracy on the test rows.
  const double acc = r.at("accuracy").get<double>();
  CHECK(r.at("metrics").at("accuracy").get<double>() ==
        doctest::Approx(acc).epsilon(1e-12));
  CHECK(r.at("metrics").at("micro").at("precision").get<double>() ==
        doctest::Approx(acc).epsilon(1e-12));
  CHECK(r.at("metrics").at("micro").at("f1").get<double>() ==
        doctest::Approx(acc).epsilon(1e-12));
  CHECK(r.at("metrics").at("weighted").at("recall").get<double>() ==
        doctest::Approx(acc).epsilon(1e-12));

  int total = 0;
  for (const auto& row : r.at("confusion").at("counts")) {
    for (const auto& cell : row) total += cell.get<int>();
  }
  CHECK(total == 45);

  const auto& grid_acc = r.at("grid_test_accuracy");
  CHECK(grid_acc.size() == cfg.c_grid.size());
  double best_grid = 0.0;
  for (const auto& g : grid_acc) {
    best_grid = std::max(best_grid, g.at("test_accuracy").get<double>());
  }
  CHECK(r.at("best_grid_test_accuracy").get<double>() ==
        doctest::Approx(best_grid).epsilon(1e-15));

  // Reruns and different worker counts produce identical bundles.
  ExperimentConfig wide = cfg;
  wide.workers = 4;
  wide.out_dir = fresh_dir("eval_w4").string();
  const ordered_json doc4 = cmd_evaluate(wide);
  CHECK(doc.dump() == doc4.dump());
  CHECK(read_file(std::filesystem::path(cfg.out_dir) / "metrics.json") ==
        read_file(std::filesystem::path(wide.out_dir) / "metrics.json"));
  CHECK(read_file(std::filesystem::path(cfg.out_dir) / "tables" /
                  "confusion_qk-pauli-z.csv") ==
        read_file(std::filesystem::path(wide.out_dir) / "tables" /
                  "confusion_qk-pauli-z.csv"));
}

TEST_CASE("evaluate sweeps noise on quantum kernels only") {
  ExperimentConfig cfg = iris_config("eval_noise");
  cfg.kernels = {"qk-pauli-z", "linear"};
  cfg.seed = 1;
  cfg.noise_sweep = {0.1};

  const ordered_json doc = cmd_evaluate(cfg);
  std::vector<std::pair<std::string, double>> runs;
  for (const auto& r : doc.at("results")) {
    runs.emplace_back(r.at("kernel").get<std::string>(),
                      r.at("noise").get<double>());
  }
  REQUIRE(runs.size() == 3);
  CHECK(runs[0] == std::pair<std::string, double>{"qk-pauli-z", 0.0});
  CHECK(runs[1] == std::pair<std::string, double>{"qk-pauli-z", 0.1});
  CHECK(runs[2] == std::pair<std::string, double>{"linear", 0.0});

  // The noisy table lands in its own csv next to the noiseless one.
  CHECK(std::filesystem::exists(std::filesystem::path(cfg.out_dir) / "tables" /
                                "confusion_qk-pauli-z_noise0.1.csv"));
}

TEST_CASE("learning curve final point matches cross-validation") {
  ExperimentConfig cfg = iris_config("lc");
  cfg.seed = 3;
  cfg.fit_on_all = true;

  ExperimentConfig cv_cfg = cfg;
  cv_cfg.out_dir = fresh_dir("lc_cv").string();

  const ordered_json lc = cmd_learning_curve(cfg);
  const ordered_json cv = cmd_crossvalidate(cv_cfg);

  const auto& lc_entry = lc.at("kernels").at(0);
  const auto& cv_entry = cv.at("kernels").at(0);
  CHECK(lc_entry.at("c").get<double>() == cv_entry.at("best_c").get<double>());
  CHECK(lc_entry.at("final_test_accuracy_mean").get<double>() ==
        doctest::Approx(cv_entry.at("mean_accuracy").get<double>())
            .epsilon(1e-12));

  const auto& rows = lc_entry.at("rows");
  CHECK(rows.size() == cfg.sizes.size());
  CHECK(rows.back().at("fraction").get<double>() == 1.0);
  CHECK(rows.back().at("train_size_mean").get<double>() ==
        doctest::Approx(120.0));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows.at(i).at("train_size_mean").get<double>() >
          rows.at(i - 1).at("train_size_mean").get<double>());
  }

  // The cross-validation grid is rectangular over the C values.
  CHECK(cv_entry.at("grid").size() == cv_cfg.c_grid.size());
  double mean = 0.0;
  for (const auto& f : cv_entry.at("fold_accuracy")) mean += f.get<double>();
  mean /= static_cast<double>(cv_entry.at("fold_accuracy").size());
  CHECK(cv_entry.at("mean_accuracy").get<double>() ==
        doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("concentration reconstructs separable teachers deterministically") {
  ConcentrationConfig cfg;
  cfg.min_qubits = 2;
  cfg.max_qubits = 3;
  cfg.total_points = 40;
  cfg.test_points = 8;
  cfg.train_sizes = {8, 16, 32};
  cfg.n_init = 8;
  cfg.shots = 200;
  cfg.anchors = 4;
  cfg.seed = 5;
  cfg.workers = 4;
  cfg.out_dir = fresh_dir("conc").string();

  const ordered_json doc = cmd_concentration(cfg);
  CHECK(doc.at("kernel") == "qk-pauli-z");
  CHECK(doc.at("shots") == 200);
  const auto& rows = doc.at("rows");
  REQUIRE(rows.size() == 6);  // two qubit counts, three sizes
  for (const auto& row : rows) {
    const int q = row.at("qubits").get<int>();
    CHECK(q >= 2);
    CHECK(q <= 3);
    CHECK(row.at("train_loss").get<double>() >= 0.0);
    CHECK(row.at("test_loss").get<double>() >= 0.0);
    if (row.at("size").get<int>() == cfg.n_init) {
      CHECK(row.at("theta").get<double>() == 1.0);
    }
  }

  ConcentrationConfig again = cfg;
  again.workers = 1;
  again.out_dir = fresh_dir("conc_again").string();
  cmd_concentration(again);
  CHECK(read_file(std::filesystem::path(cfg.out_dir) / "metrics.json") ==
        read_file(std::filesystem::path(again.out_dir) / "metrics.json"));
  const std::string csv = read_file(std::filesystem::path(cfg.out_dir) /
                                    "tables" / "concentration.csv");
  CHECK(csv.rfind("qubits,size,train_loss,test_loss,theta", 0) == 0);
}

TEST_CASE("generalization ties the bound to the frobenius norm") {
  ExperimentConfig cfg = iris_config("gen");
  cfg.kernels = {"qk-pauli-z", "linear"};
  cfg.seed = 1;

  const ordered_json doc = cmd_generalization(cfg);
  REQUIRE(doc.at("kernels").size() == 2);
  double quantum_norm = 0.0, linear_norm = 0.0;
  for (const auto& e : doc.at("kernels")) {
    const double fro = e.at("frobenius_norm").get<double>();
    const double rows = e.at("sample_count").get<double>();
    CHECK(e.at("upper_bound").get<double>() == fro / rows);
    CHECK(e.at("rademacher_estimate").get<double>() <=
          e.at("upper_bound").get<double>());
    if (e.at("kernel") == "qk-pauli-z") quantum_norm = fro;
    if (e.at("kernel") == "linear") linear_norm = fro;
  }
  CHECK(quantum_norm > 0.0);
  CHECK(quantum_norm < linear_norm);
}

TEST_CASE("command failures carry the documented error taxonomy") {
  ExperimentConfig missing = iris_config("err_data");
  missing.dataset = "nosuchset";
  CHECK(kind_of([&] { cmd_evaluate(missing); }) == ErrorKind::Data);

  ExperimentConfig bad = iris_config("err_cfg");
  bad.kernels = {"rbf"};
  CHECK(kind_of([&] { cmd_evaluate(bad); }) == ErrorKind::Config);

  ConcentrationConfig conc;
  conc.min_qubits = 9;
  conc.max_qubits = 4;
  CHECK(kind_of([&] { cmd_concentration(conc); }) == ErrorKind::Config);
}

// ===========================================================================
// Binary behavior
// ===========================================================================

TEST_CASE("the binary prints the metrics document and exits zero") {
  const auto out = fresh_dir("bin_ok");
  const CliRun run = run_cli("generalization --dataset iris"
                             " --kernels qk-pauli-z --data-dir " +
                                 kDataDir + " --out " + out.string(),
                             "ok");
  CHECK(run.exit_code == 0);
  const ordered_json doc = ordered_json::parse(run.out);
  CHECK(doc.at("command") == "generalization");
  CHECK(doc.at("dataset") == "iris");
}

TEST_CASE("usage problems and missing data use the documented exit codes") {
  CHECK(run_cli("--help", "help").exit_code == 0);
  CHECK(run_cli("evaluate --help", "help_sub").exit_code == 0);

  // Parse errors and config validation failures exit with 2.
  CHECK(run_cli("transmogrify", "badcmd").exit_code == 2);
  CHECK(run_cli("evaluate --no-such-flag", "badflag").exit_code == 2);
  const CliRun no_dataset = run_cli("evaluate --kernels qk-full", "nodataset");
  CHECK(no_dataset.exit_code == 2);
  CHECK_FALSE(no_dataset.err.empty());
  const CliRun bad_kernel = run_cli(
      "evaluate --dataset iris --kernels rbf --data-dir " + kDataDir,
      "badkernel");
  CHECK(bad_kernel.exit_code == 2);

  // A dataset that cannot be loaded exits with 3.
  const auto out = fresh_dir("bin_missing");
  const CliRun missing = run_cli("evaluate --dataset nosuchset"
                                 " --kernels qk-full --data-dir " +
                                     kDataDir + " --out " + out.string(),
                                 "missing");
  CHECK(missing.exit_code == 3);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("config files merge beneath command-line flags") {
  const auto dir = fresh_dir("bin_config");
  const auto cfg_path = dir / "run.json";
  write_file(cfg_path, R"({
    "dataset": "iris",
    "kernels": ["linear"],
    "seed": 9,
    "folds": 4
  })");

  const auto out = dir / "bundle";
  const CliRun run = run_cli("crossvalidate --config " + cfg_path.string() +
                                 " --seed 3 --data-dir " + kDataDir +
                                 " --out " + out.string(),
                             "config");
  REQUIRE(run.exit_code == 0);
  const ordered_json doc = ordered_json::parse(run.out);
  CHECK(doc.at("folds") == 4);  // from the file
  CHECK(doc.at("kernels").at(0).at("kernel") == "linear");

  const ordered_json echo =
      ordered_json::parse(read_file(out / "config.json"));
  CHECK(echo.at("config").at("seed") == 3);  // the flag wins
  CHECK(echo.at("config").at("folds") == 4);
  CHECK(echo.at("config").at("dataset") == "iris");
}
