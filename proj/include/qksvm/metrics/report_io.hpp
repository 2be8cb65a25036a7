// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qksvm/metrics/classification.hpp"
#include "qksvm/metrics/generalization.hpp"
#include "qksvm/metrics/roc.hpp"

namespace qksvm::metrics {

// JSON serializations keep full double precision; the text forms are
// aligned four-decimal tables for terminal reading.
std::string metrics_to_json(const MetricsReport& report,
                            const std::vector<std::string>& class_names);
std::string metrics_to_text(const MetricsReport& report,
                            const std::vector<std::string>& class_names);

std::string confusion_to_json(const ConfusionMatrix& cm,
                              const std::vector<std::string>& class_names);

std::string roc_to_json(const RocReport& report,
                        const std::vector<std::string>& class_names);

// One row per curve point: class label (or "micro"), fpr, tpr.
void write_roc_csv(const std::string& path, const RocReport& report,
                   const std::vector<std::string>& class_names);

std::string generalization_to_json(const GeneralizationReport& report);
std::string generalization_to_text(const GeneralizationReport& report);

}  // namespace qksvm::metrics
