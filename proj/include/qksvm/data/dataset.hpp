// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace qksvm::data {

// A fully ingested classification problem. Labels are integer codes 1..l
// assigned by sorting the distinct label strings lexicographically, so the
// coding is a function of the data alone and never of row order.
struct Dataset {
  Eigen::MatrixXd features;  // m x N
  std::vector<int> labels;   // length m, values in 1..l
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;  // class code s corresponds to
                                         // class_names[s - 1]
  std::string provenance;
  int dropped_rows = 0;  // rows removed for missing values during ingestion

  Eigen::Index n_rows() const { return features.rows(); }
  Eigen::Index n_features() const { return features.cols(); }
  int n_classes() const { return static_cast<int>(class_names.size()); }

  // Row subset, preserving metadata. Indices are 0-based.
  Dataset select(const std::vector<int>& indices) const;
};

// Column layout of a delimited text file. `missing_tokens` mark a row for
// removal wherever they appear in a used column; `categorical` maps string
// levels of a feature column to numeric codes.
struct DatasetSchema {
  std::string label_column;
  std::vector<std::string> feature_columns;
  std::vector<std::string> missing_tokens;
  std::map<std::string, std::map<std::string, double>> categorical;

  static DatasetSchema from_json(const std::string& text);
  static DatasetSchema load(const std::string& path);
};

// Parses a header-rowed delimited file (comma- or whitespace-separated).
// Rows containing a missing token in any used column are dropped and
// counted; any other unparseable field is an error naming its row and
// column.
Dataset load_dataset(const std::string& path, const DatasetSchema& schema);

// Convenience: reads `<stem>.csv` plus `<stem>.schema.json` from a data
// directory.
Dataset load_named_dataset(const std::string& data_dir,
                           const std::string& stem);

}  // namespace qksvm::data
