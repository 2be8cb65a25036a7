// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "qksvm/data/dataset.hpp"

namespace qksvm::data {

// Index partition of a dataset, either one train/test cut or k folds.
// Indices are 0-based, sorted, disjoint and covering.
struct SplitPlan {
  std::vector<int> train_indices;
  std::vector<int> test_indices;
  std::vector<std::vector<int>> folds;
  std::uint64_t seed = 0;
};

// Stratified holdout split. The global training size is
// floor((1 - test_fraction) * m); per-class training quotas use
// largest-remainder apportionment (ties by larger remainder, then lower
// class code), so per-class counts stay within one of exact
// proportionality. Membership is randomized per class by seed.
SplitPlan stratified_split(const Dataset& dataset, double test_fraction = 0.3,
                           std::uint64_t seed = 0);

// Stratified k folds: each class is shuffled by seed and dealt round-robin,
// with the dealing cursor carried across classes to balance fold sizes.
SplitPlan stratified_kfold(const Dataset& dataset, int k = 5,
                           std::uint64_t seed = 0);

}  // namespace qksvm::data
