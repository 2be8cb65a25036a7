// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/metrics/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qksvm/util/errors.hpp"

namespace qksvm::metrics {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed4(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", v);
  return buffer;
}

std::string class_label(const std::vector<std::string>& names,
                        std::size_t index) {
  if (index < names.size()) return names[index];
  return "class " + std::to_string(index + 1);
}

void check_names(std::size_t have, std::size_t need) {
  require_data(have == 0 || have == need,
               "class name list does not match the class count");
}

}  // namespace

std::string metrics_to_json(const MetricsReport& report,
                            const std::vector<std::string>& class_names) {
  check_names(class_names.size(), report.per_class.size());
  ordered_json j;
  j["classes"] = ordered_json::array();
  for (std::size_t t = 0; t < report.per_class.size(); ++t) {
    const auto& c = report.per_class[t];
    j["classes"].push_back({{"name", class_label(class_names, t)},
                            {"precision", c.precision},
                            {"recall", c.recall},
                            {"f1", c.f1},
                            {"support", c.support},
                            {"weight", report.class_weights[t]},
                            {"zero_division", c.zero_division}});
  }
  j["macro"] = {{"precision", report.macro_precision},
                {"recall", report.macro_recall},
                {"f1", report.macro_f1}};
  j["weighted"] = {{"precision", report.weighted_precision},
                   {"recall", report.weighted_recall},
                   {"f1", report.weighted_f1}};
  j["micro"] = {{"precision", report.micro_precision},
                {"recall", report.micro_recall},
                {"f1", report.micro_f1}};
  j["accuracy"] = report.accuracy;
  return j.dump(2);
}

std::string metrics_to_text(const MetricsReport& report,
                            const std::vector<std::string>& class_names) {
  check_names(class_names.size(), report.per_class.size());
  std::size_t width = 8;
  for (std::size_t t = 0; t < report.per_class.size(); ++t) {
    width = std::max(width, class_label(class_names, t).size());
  }

  std::ostringstream out;
  const auto row = [&](const std::string& name, const std::string& a,
                       const std::string& b, const std::string& c,
                       const std::string& d) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << name
        << std::right << std::setw(11) << a << std::setw(11) << b
        << std::setw(11) << c << std::setw(9) << d << "\n";
  };
  row("class", "precision", "recall", "f1", "support");
  bool any_flag = false;
  for (std::size_t t = 0; t < report.per_class.size(); ++t) {
    const auto& c = report.per_class[t];
    any_flag = any_flag || c.zero_division;
    row(class_label(class_names, t) + (c.zero_division ? "*" : ""),
        fixed4(c.precision), fixed4(c.recall), fixed4(c.f1),
        std::to_string(c.support));
  }
  row("macro", fixed4(report.macro_precision), fixed4(report.macro_recall),
      fixed4(report.macro_f1), "");
  row("weighted", fixed4(report.weighted_precision),
      fixed4(report.weighted_recall), fixed4(report.weighted_f1), "");
  row("micro", fixed4(report.micro_precision), fixed4(report.micro_recall),
      fixed4(report.micro_f1), "");
  out << std::left << std::setw(static_cast<int>(width) + 2) << "accuracy"
      << std::right << std::setw(11) << fixed4(report.accuracy) << "\n";
  if (any_flag) {
    out << "* zero denominator reported as 0\n";
  }
  return out.str();
}

std::string confusion_to_json(const ConfusionMatrix& cm,
                              const std::vector<std::string>& class_names) {
  check_names(class_names.size(),
              static_cast<std::size_t>(cm.n_classes()));
  ordered_json j;
  j["classes"] = ordered_json::array();
  for (int t = 0; t < cm.n_classes(); ++t) {
    j["classes"].push_back(
        class_label(class_names, static_cast<std::size_t>(t)));
  }
  j["counts"] = ordered_json::array();
  for (int t = 0; t < cm.n_classes(); ++t) {
    ordered_json row = ordered_json::array();
    for (int p = 0; p < cm.n_classes(); ++p) row.push_back(cm.counts(t, p));
    j["counts"].push_back(row);
  }
  return j.dump(2);
}

std::string roc_to_json(const RocReport& report,
                        const std::vector<std::string>& class_names) {
  check_names(class_names.size(), report.per_class.size());
  ordered_json j;
  j["classes"] = ordered_json::array();
  for (std::size_t t = 0; t < report.per_class.size(); ++t) {
    const auto& c = report.per_class[t];
    j["classes"].push_back({{"name", class_label(class_names, t)},
                            {"auc", c.auc},
                            {"defined", c.defined},
                            {"positives", c.positives},
                            {"negatives", c.negatives}});
  }
  j["macro_auc"] = report.macro_auc;
  j["weighted_auc"] = report.weighted_auc;
  j["micro_auc"] = report.micro_auc;
  j["notices"] = report.notices;
  return j.dump(2);
}

void write_roc_csv(const std::string& path, const RocReport& report,
                   const std::vector<std::string>& class_names) {
  check_names(class_names.size(), report.per_class.size());
  std::ofstream out(path);
  require_data(out.good(), "cannot open for writing: " + path);
  out << "class,fpr,tpr\n";
  out << std::setprecision(17);
  for (std::size_t t = 0; t < report.per_class.size(); ++t) {
    const auto& c = report.per_class[t];
    for (std::size_t k = 0; k < c.fpr.size(); ++k) {
      out << class_label(class_names, t) << "," << c.fpr[k] << ","
          << c.tpr[k] << "\n";
    }
  }
  for (std::size_t k = 0; k < report.micro.fpr.size(); ++k) {
    out << "micro," << report.micro.fpr[k] << "," << report.micro.tpr[k]
        << "\n";
  }
  require_data(out.good(), "write failed: " + path);
}

std::string generalization_to_json(const GeneralizationReport& report) {
  ordered_json j;
  j["frobenius_norm"] = report.frobenius_norm;
  j["rademacher_estimate"] = report.rademacher_estimate;
  j["rademacher_std_error"] = report.rademacher_std_error;
  j["upper_bound"] = report.upper_bound;
  j["delta"] = report.delta;
  j["sample_count"] = report.sample_count;
  j["draws"] = report.draws;
  return j.dump(2);
}

std::string generalization_to_text(const GeneralizationReport& report) {
  std::ostringstream out;
  out << "frobenius norm        " << fixed4(report.frobenius_norm) << "\n"
      << "rademacher estimate   " << fixed4(report.rademacher_estimate)
      << " (draws " << report.draws << ", se "
      << fixed4(report.rademacher_std_error) << ")\n"
      << "upper bound           " << fixed4(report.upper_bound) << "\n";
  return out.str();
}

}  // namespace qksvm::metrics
