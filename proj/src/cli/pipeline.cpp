// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/cli/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qksvm/data/preprocess.hpp"
#include "qksvm/data/split.hpp"
#include "qksvm/svm/crammer_singer.hpp"
#include "qksvm/svm/smo.hpp"
#include "qksvm/util/digest.hpp"
#include "qksvm/util/errors.hpp"
#include "qksvm/util/parallel.hpp"
#include "qksvm/util/rng.hpp"

namespace qksvm::cli {

SplitView transform_split(const data::Dataset& dataset,
                          const std::vector<int>& train_idx,
                          const std::vector<int>& test_idx, bool fit_on_all,
                          double pca_threshold, int pca_min_features) {
  require_config(!train_idx.empty(), "training index set must not be empty");
  SplitView view;
  view.train_y = gather_labels(dataset.labels, train_idx);
  view.test_y = gather_labels(dataset.labels, test_idx);

  const bool reduce = dataset.n_features() >= pca_min_features;
  if (fit_on_all) {
    const data::Normalizer norm = data::zscore_fit(dataset.features);
    Eigen::MatrixXd z = data::zscore_apply(norm, dataset.features);
    if (reduce) {
      const data::PcaModel pca = data::pca_fit(z, pca_threshold);
      z = data::pca_apply(pca, z);
      view.pca_k = pca.k;
    }
    view.train_x = gather_rows(z, train_idx);
    view.test_x = gather_rows(z, test_idx);
    return view;
  }

  const Eigen::MatrixXd raw_train = gather_rows(dataset.features, train_idx);
  const Eigen::MatrixXd raw_test = gather_rows(dataset.features, test_idx);
  const data::Normalizer norm = data::zscore_fit(raw_train);
  view.train_x = data::zscore_apply(norm, raw_train);
  view.test_x = test_idx.empty() ? Eigen::MatrixXd(0, view.train_x.cols())
                                 : data::zscore_apply(norm, raw_test);
  if (reduce) {
    const data::PcaModel pca = data::pca_fit(view.train_x, pca_threshold);
    view.train_x = data::pca_apply(pca, view.train_x);
    if (view.test_x.rows() > 0) {
      view.test_x = data::pca_apply(pca, view.test_x);
    } else {
      view.test_x.resize(0, pca.k);
    }
    view.pca_k = pca.k;
  }
  return view;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& k_matrix,
                       const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          k_matrix(rows[i], cols[j]);
    }
  }
  return out;
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& x,
                            const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  }
  return out;
}

std::vector<int> gather_labels(const std::vector<int>& labels,
                               const std::vector<int>& indices) {
  std::vector<int> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(labels[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<int> complement(int m, const std::vector<int>& subset) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(m) - subset.size());
  std::size_t cursor = 0;
  for (int i = 0; i < m; ++i) {
    if (cursor < subset.size() && subset[cursor] == i) {
      ++cursor;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

double accuracy(const std::vector<int>& truth,
                const std::vector<int>& predicted) {
  require_config(truth.size() == predicted.size() && !truth.empty(),
                 "accuracy needs matching nonempty label vectors");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == predicted[i]) ++hits;
  }
  return double(hits) / double(truth.size());
}

svm::MulticlassModel train_multiclass(const Eigen::MatrixXd& k_matrix,
                                      const std::vector<int>& labels, double c,
                                      svm::Strategy strategy, int workers,
                                      int n_classes) {
  if (strategy == svm::Strategy::CrammerSinger) {
    return svm::crammer_singer_train(k_matrix, labels, c, 1e-6, 2000,
                                     n_classes);
  }
  return svm::train_one_vs_all(k_matrix, labels, c, 1e-3, 1000, workers,
                               n_classes);
}

Eigen::MatrixXd decision_matrix(const svm::MulticlassModel& model,
                                const Eigen::MatrixXd& k_rows) {
  Eigen::MatrixXd scores(k_rows.rows(), model.n_classes);
  for (Eigen::Index r = 0; r < k_rows.rows(); ++r) {
    scores.row(r) = svm::decision_values(model, k_rows.row(r).transpose());
  }
  return scores;
}

namespace {

// Minimal dataset carrying only labels, enough to drive the stratified fold
// planner on a training subset.
data::Dataset labels_only(const std::vector<int>& labels, int n_classes) {
  int l = n_classes;
  for (int y : labels) l = std::max(l, y);
  data::Dataset ds;
  ds.features = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(labels.size()), 1);
  ds.labels = labels;
  ds.feature_names = {"x"};
  for (int s = 1; s <= l; ++s) {
    ds.class_names.push_back(std::to_string(s));
  }
  return ds;
}

}  // namespace

CGridResult select_c(const Eigen::MatrixXd& k_matrix,
                     const std::vector<int>& labels,
                     const std::vector<double>& c_grid, int folds,
                     svm::Strategy strategy, std::uint64_t seed, int workers,
                     int n_classes) {
  require_config(!c_grid.empty(), "C grid must not be empty");
  const auto m = static_cast<int>(labels.size());
  const data::SplitPlan plan =
      data::stratified_kfold(labels_only(labels, n_classes), folds, seed);

  struct Fold {
    Eigen::MatrixXd k_train;
    Eigen::MatrixXd k_val;
    std::vector<int> y_train;
    std::vector<int> y_val;
  };
  std::vector<Fold> cuts(plan.folds.size());
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const std::vector<int>& val = plan.folds[f];
    const std::vector<int> train = complement(m, val);
    cuts[f].k_train = gather(k_matrix, train, train);
    cuts[f].k_val = gather(k_matrix, val, train);
    cuts[f].y_train = gather_labels(labels, train);
    cuts[f].y_val = gather_labels(labels, val);
  }

  CGridResult result;
  result.accuracy.resize(static_cast<Eigen::Index>(c_grid.size()),
                         static_cast<Eigen::Index>(cuts.size()));
  parallel_for(c_grid.size() * cuts.size(), workers, [&](std::size_t cell) {
    const std::size_t ci = cell / cuts.size();
    const std::size_t f = cell % cuts.size();
    const Fold& cut = cuts[f];
    const svm::MulticlassModel model = train_multiclass(
        cut.k_train, cut.y_train, c_grid[ci], strategy, 1, n_classes);
    result.accuracy(static_cast<Eigen::Index>(ci),
                    static_cast<Eigen::Index>(f)) =
        accuracy(cut.y_val, svm::predict_all(model, cut.k_val));
  });

  result.best_c = c_grid[0];
  result.best_mean = -1.0;
  Eigen::Index best_row = 0;
  for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
    const double mean =
        result.accuracy.row(static_cast<Eigen::Index>(ci)).mean();
    if (mean > result.best_mean) {
      result.best_mean = mean;
      result.best_c = c_grid[ci];
      best_row = static_cast<Eigen::Index>(ci);
    }
  }
  result.best_fold_accuracy.resize(
      static_cast<std::size_t>(result.accuracy.cols()));
  for (Eigen::Index f = 0; f < result.accuracy.cols(); ++f) {
    result.best_fold_accuracy[static_cast<std::size_t>(f)] =
        result.accuracy(best_row, f);
  }
  return result;
}

std::vector<int> stratified_subsample(const std::vector<int>& labels,
                                      double fraction, std::uint64_t seed) {
  require_config(fraction > 0.0 && fraction <= 1.0,
                 "subsample fraction must lie in (0, 1]");
  const auto m = static_cast<int>(labels.size());
  require_config(m >= 1, "cannot subsample an empty pool");
  std::vector<int> all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
  if (fraction == 1.0) return all;

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < m; ++i) groups[labels[static_cast<std::size_t>(i)]].push_back(i);
  const auto n_groups = static_cast<int>(groups.size());

  int target = static_cast<int>(std::llround(fraction * m));
  target = std::clamp(target, n_groups, m);

  // Largest-remainder quotas toward the target, then at least one member
  // per class, paid for by the largest quota.
  std::vector<int> codes;
  std::vector<int> quota;
  std::vector<std::pair<double, int>> remainders;
  int total = 0;
  for (const auto& [code, members] : groups) {
    const double exact = fraction * double(members.size());
    const int q = static_cast<int>(std::floor(exact));
    codes.push_back(code);
    quota.push_back(q);
    remainders.emplace_back(exact - q, static_cast<int>(codes.size()) - 1);
    total += q;
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  for (std::size_t r = 0; total < target; r = (r + 1) % remainders.size()) {
    const auto g = static_cast<std::size_t>(remainders[r].second);
    if (quota[g] < static_cast<int>(groups.at(codes[g]).size())) {
      ++quota[g];
      ++total;
    }
  }
  for (std::size_t g = 0; g < quota.size(); ++g) {
    while (quota[g] == 0) {
      const auto donor = static_cast<std::size_t>(std::distance(
          quota.begin(), std::max_element(quota.begin(), quota.end())));
      require_numerical(quota[donor] >= 2,
                        "subsample cannot cover every class");
      --quota[donor];
      ++quota[g];
    }
  }

  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(target));
  for (std::size_t g = 0; g < codes.size(); ++g) {
    std::vector<int> order = groups.at(codes[g]);
    Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(codes[g])});
    rng.shuffle(order);
    for (int j = 0; j < quota[g]; ++j) {
      picked.push_back(order[static_cast<std::size_t>(j)]);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::uint64_t dataset_digest(const data::Dataset& dataset) {
  Digest d;
  d.update(static_cast<std::uint64_t>(dataset.n_rows()));
  d.update(static_cast<std::uint64_t>(dataset.n_features()));
  for (Eigen::Index i = 0; i < dataset.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < dataset.features.cols(); ++j) {
      d.update(dataset.features(i, j));
    }
  }
  for (int label : dataset.labels) d.update(static_cast<std::int64_t>(label));
  for (const auto& name : dataset.feature_names) d.update(name).update("|");
  for (const auto& name : dataset.class_names) d.update(name).update("|");
  d.update(dataset.provenance);
  return d.value();
}

std::string matrix_identity(const std::string& tag, const Eigen::MatrixXd& m) {
  Digest d;
  d.update(static_cast<std::uint64_t>(m.rows()));
  d.update(static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) d.update(m(i, j));
  }
  return tag + ":" + d.hex();
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b) {
  Digest d;
  d.update(base).update(a).update(b);
  return d.value();
}

}  // namespace qksvm::cli
