// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "qksvm/svm/model.hpp"
#include "qksvm/util/errors.hpp"

namespace qksvm::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_object(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    require_config(false, std::string("config is not valid JSON: ") + e.what());
  }
  require_config(j.is_object(), "config root must be a JSON object");
  return j;
}

void check_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    require_config(allowed.count(item.key()) == 1,
                   "unknown config key '" + item.key() + "'");
  }
}

template <typename T>
void read_key(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    require_config(false, std::string("config key '") + key +
                              "' has the wrong type");
  }
}

bool looks_like_path(const std::string& name) {
  return name.find('/') != std::string::npos ||
         (name.size() > 4 && name.substr(name.size() - 4) == ".csv");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const json j = parse_object(text);
  check_keys(j, {"dataset", "schema", "data_dir", "kernels", "strategy",
                 "c_grid", "seed", "workers", "out_dir", "shots", "noise",
                 "noise_sweep", "folds", "test_fraction", "pca_threshold",
                 "pca_min_features", "fit_on_all", "angle_scale", "sizes"});

  ExperimentConfig cfg;
  read_key(j, "dataset", cfg.dataset);
  read_key(j, "schema", cfg.schema);
  read_key(j, "data_dir", cfg.data_dir);
  read_key(j, "kernels", cfg.kernels);
  read_key(j, "strategy", cfg.strategy);
  read_key(j, "c_grid", cfg.c_grid);
  read_key(j, "seed", cfg.seed);
  read_key(j, "workers", cfg.workers);
  read_key(j, "out_dir", cfg.out_dir);
  read_key(j, "shots", cfg.shots);
  read_key(j, "noise", cfg.noise_p);
  read_key(j, "noise_sweep", cfg.noise_sweep);
  read_key(j, "folds", cfg.folds);
  read_key(j, "test_fraction", cfg.test_fraction);
  read_key(j, "pca_threshold", cfg.pca_threshold);
  read_key(j, "pca_min_features", cfg.pca_min_features);
  read_key(j, "fit_on_all", cfg.fit_on_all);
  read_key(j, "angle_scale", cfg.angle_scale);
  read_key(j, "sizes", cfg.sizes);
  return cfg;
}

std::string ExperimentConfig::to_json() const {
  ordered_json j;
  j["dataset"] = dataset;
  j["schema"] = schema;
  j["data_dir"] = data_dir;
  j["kernels"] = kernels;
  j["strategy"] = strategy;
  j["c_grid"] = c_grid;
  j["seed"] = seed;
  j["workers"] = workers;
  j["out_dir"] = out_dir;
  j["shots"] = shots;
  j["noise"] = noise_p;
  j["noise_sweep"] = noise_sweep;
  j["folds"] = folds;
  j["test_fraction"] = test_fraction;
  j["pca_threshold"] = pca_threshold;
  j["pca_min_features"] = pca_min_features;
  j["fit_on_all"] = fit_on_all;
  j["angle_scale"] = angle_scale;
  j["sizes"] = sizes;
  return j.dump(2);
}

void ExperimentConfig::validate() const {
  require_config(!dataset.empty(),
                 "config needs a dataset (a stem in data_dir or a csv path "
                 "with a schema)");
  if (looks_like_path(dataset)) {
    require_config(!schema.empty(),
                   "an explicit dataset path needs a schema path");
  }
  require_config(!kernels.empty(), "config needs at least one kernel");
  const auto& known = known_kernel_ids();
  for (const auto& id : kernels) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      std::string valid;
      for (const auto& k : known) valid += (valid.empty() ? "" : ", ") + k;
      require_config(false, "unknown kernel '" + id + "' (valid: " + valid +
                                ")");
    }
  }
  // Parsed here only to reject bad names before any computation.
  (void)svm::strategy_from_name(strategy);
  require_config(!c_grid.empty(), "c_grid must not be empty");
  for (double c : c_grid) {
    require_config(std::isfinite(c) && c > 0.0, "C values must be positive");
  }
  require_config(workers >= 1, "workers must be at least 1");
  require_config(shots >= 0, "shots must be nonnegative (0 = exact)");
  require_config(noise_p >= 0.0 && noise_p <= 1.0,
                 "noise probability must lie in [0, 1]");
  for (double p : noise_sweep) {
    require_config(p >= 0.0 && p <= 1.0,
                   "noise probabilities must lie in [0, 1]");
  }
  require_config(folds >= 2, "folds must be at least 2");
  require_config(test_fraction > 0.0 && test_fraction < 1.0,
                 "test_fraction must lie in (0, 1)");
  require_config(pca_threshold > 0.0 && pca_threshold <= 1.0,
                 "pca_threshold must lie in (0, 1]");
  require_config(pca_min_features >= 2, "pca_min_features must be at least 2");
  require_config(std::isfinite(angle_scale) && angle_scale > 0.0,
                 "angle_scale must be positive");
  require_config(!sizes.empty(), "sizes must not be empty");
  for (double s : sizes) {
    require_config(s > 0.0 && s <= 1.0,
                   "training-size fractions must lie in (0, 1]");
  }
  require_config(!out_dir.empty(), "out_dir must not be empty");
}

ConcentrationConfig ConcentrationConfig::from_json(const std::string& text) {
  const json j = parse_object(text);
  check_keys(j, {"min_qubits", "max_qubits", "total_points", "shots",
                 "test_points", "seed", "train_sizes", "n_init", "anchors",
                 "c", "workers", "out_dir"});

  ConcentrationConfig cfg;
  read_key(j, "min_qubits", cfg.min_qubits);
  read_key(j, "max_qubits", cfg.max_qubits);
  read_key(j, "total_points", cfg.total_points);
  read_key(j, "shots", cfg.shots);
  read_key(j, "test_points", cfg.test_points);
  read_key(j, "seed", cfg.seed);
  read_key(j, "train_sizes", cfg.train_sizes);
  read_key(j, "n_init", cfg.n_init);
  read_key(j, "anchors", cfg.anchors);
  read_key(j, "c", cfg.c_value);
  read_key(j, "workers", cfg.workers);
  read_key(j, "out_dir", cfg.out_dir);
  return cfg;
}

std::string ConcentrationConfig::to_json() const {
  ordered_json j;
  j["min_qubits"] = min_qubits;
  j["max_qubits"] = max_qubits;
  j["total_points"] = total_points;
  j["shots"] = shots;
  j["test_points"] = test_points;
  j["seed"] = seed;
  j["train_sizes"] = train_sizes;
  j["n_init"] = n_init;
  j["anchors"] = anchors;
  j["c"] = c_value;
  j["workers"] = workers;
  j["out_dir"] = out_dir;
  return j.dump(2);
}

void ConcentrationConfig::validate() const {
  require_config(min_qubits >= 1, "min_qubits must be at least 1");
  require_config(max_qubits >= min_qubits,
                 "max_qubits must be at least min_qubits");
  require_config(max_qubits <= 20,
                 "qubit counts beyond 20 are not simulable here");
  require_config(shots >= 0, "shots must be nonnegative (0 = exact)");
  require_config(test_points >= 1, "test_points must be at least 1");
  require_config(!train_sizes.empty(), "train_sizes must not be empty");
  int largest = 0;
  for (int n : train_sizes) {
    require_config(n >= 2, "training sizes must be at least 2");
    require_config(n > largest, "train_sizes must be strictly increasing");
    largest = n;
  }
  require_config(largest + test_points <= total_points,
                 "total_points must cover the largest training size plus the "
                 "test points");
  require_config(
      std::find(train_sizes.begin(), train_sizes.end(), n_init) !=
          train_sizes.end(),
      "n_init must be one of the training sizes");
  require_config(anchors >= 1, "anchors must be at least 1");
  require_config(std::isfinite(c_value) && c_value > 0.0,
                 "c must be positive");
  require_config(workers >= 1, "workers must be at least 1");
  require_config(!out_dir.empty(), "out_dir must not be empty");
}

bool is_quantum_kernel_id(const std::string& id) {
  return id.rfind("qk-", 0) == 0;
}

const std::vector<std::string>& known_kernel_ids() {
  static const std::vector<std::string> ids = {
      "qk-full",    "qk-linear", "qk-circular", "qk-pauli-x", "qk-pauli-y",
      "qk-pauli-z", "linear",    "polynomial",  "sigmoid",    "gaussian"};
  return ids;
}

kernels::KernelSpec resolve_kernel_spec(const std::string& id, int n_features,
                                        double angle_scale, double noise_p,
                                        std::int64_t shots,
                                        std::uint64_t seed) {
  require_config(n_features >= 1, "kernels need at least one feature");
  if (is_quantum_kernel_id(id)) {
    const kernels::FeatureMapKind kind =
        kernels::feature_map_from_name(id.substr(3));
    kernels::KernelSpec spec =
        kernels::KernelSpec::quantum(kind, n_features, angle_scale);
    spec.noise_p = noise_p;
    spec.shots = shots;
    spec.seed = seed;
    spec.validate();
    return spec;
  }
  const kernels::ClassicalKind kind = kernels::classical_from_name(id);
  kernels::ClassicalParams params;
  if (kind == kernels::ClassicalKind::Gaussian ||
      kind == kernels::ClassicalKind::Sigmoid) {
    params.kappa = 1.0 / double(n_features);
  }
  kernels::KernelSpec spec =
      kernels::KernelSpec::classical_kernel_spec(kind, params);
  spec.validate();
  return spec;
}

data::Dataset load_input(const ExperimentConfig& config) {
  if (!config.schema.empty()) {
    const std::string path = looks_like_path(config.dataset)
                                 ? config.dataset
                                 : config.data_dir + "/" + config.dataset +
                                       ".csv";
    return data::load_dataset(path, data::DatasetSchema::load(config.schema));
  }
  return data::load_named_dataset(config.data_dir, config.dataset);
}

}  // namespace qksvm::cli
