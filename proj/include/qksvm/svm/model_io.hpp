// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "qksvm/svm/model.hpp"

namespace qksvm::svm {

// Versioned JSON model document ({"format": "qksvm-model", "version": 1,
// ...}). Serialization is byte-deterministic for a given model.
std::string model_to_json(const MulticlassModel& model);
MulticlassModel model_from_json(const std::string& text);

void save_model(const std::string& path, const MulticlassModel& model);
MulticlassModel load_model(const std::string& path);

}  // namespace qksvm::svm
