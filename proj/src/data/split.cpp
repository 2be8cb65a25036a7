// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/data/split.hpp"

#include <algorithm>
#include <cmath>

#include "qksvm/util/errors.hpp"
#include "qksvm/util/rng.hpp"

namespace qksvm::data {

namespace {

// Class member indices in ascending row order, one bucket per class code.
std::vector<std::vector<int>> indices_by_class(const Dataset& dataset) {
  std::vector<std::vector<int>> buckets(
      static_cast<std::size_t>(dataset.n_classes()));
  for (std::size_t i = 0; i < dataset.labels.size(); ++i) {
    buckets[static_cast<std::size_t>(dataset.labels[i] - 1)].push_back(
        static_cast<int>(i));
  }
  return buckets;
}

std::vector<int> shuffled(const std::vector<int>& indices, std::uint64_t seed,
                          int class_code) {
  std::vector<int> out = indices;
  Rng rng = Rng::stream(seed, {static_cast<std::uint64_t>(class_code)});
  rng.shuffle(out);
  return out;
}

}  // namespace

SplitPlan stratified_split(const Dataset& dataset, double test_fraction,
                           std::uint64_t seed) {
  require_config(test_fraction > 0.0 && test_fraction < 1.0,
                 "test fraction must lie in (0, 1)");
  const auto buckets = indices_by_class(dataset);
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    require_data(buckets[c].size() >= 2,
                 "class " + std::to_string(c + 1) +
                     " has fewer than two members, cannot split");
  }

  const double train_fraction = 1.0 - test_fraction;
  const auto m = static_cast<int>(dataset.n_rows());
  const int target = static_cast<int>(std::floor(train_fraction * m));

  // Largest-remainder apportionment of the global training size across
  // classes: floors first, then one extra seat per largest remainder, ties
  // to the lower class code.
  std::vector<int> quota(buckets.size());
  std::vector<std::pair<double, int>> remainders;
  int allotted = 0;
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    const double exact = train_fraction * double(buckets[c].size());
    quota[c] = static_cast<int>(std::floor(exact));
    allotted += quota[c];
    remainders.emplace_back(exact - quota[c], static_cast<int>(c));
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  for (int extra = 0; extra < target - allotted; ++extra) {
    ++quota[static_cast<std::size_t>(
        remainders[static_cast<std::size_t>(extra)].second)];
  }

  SplitPlan plan;
  plan.seed = seed;
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    const std::vector<int> order =
        shuffled(buckets[c], seed, static_cast<int>(c) + 1);
    for (std::size_t j = 0; j < order.size(); ++j) {
      (j < static_cast<std::size_t>(quota[c]) ? plan.train_indices
                                              : plan.test_indices)
          .push_back(order[j]);
    }
  }
  std::sort(plan.train_indices.begin(), plan.train_indices.end());
  std::sort(plan.test_indices.begin(), plan.test_indices.end());
  return plan;
}

SplitPlan stratified_kfold(const Dataset& dataset, int k, std::uint64_t seed) {
  require_config(k >= 2, "k-fold requires k >= 2");
  require_data(k <= dataset.n_rows(),
               "k-fold requires at least k rows, got " +
                   std::to_string(dataset.n_rows()));
  const auto buckets = indices_by_class(dataset);

  SplitPlan plan;
  plan.seed = seed;
  plan.folds.assign(static_cast<std::size_t>(k), {});
  std::size_t cursor = 0;
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    const std::vector<int> order =
        shuffled(buckets[c], seed, static_cast<int>(c) + 1);
    for (int idx : order) {
      plan.folds[cursor % static_cast<std::size_t>(k)].push_back(idx);
      ++cursor;
    }
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  return plan;
}

}  // namespace qksvm::data
