// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/data/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qksvm/util/errors.hpp"

namespace qksvm::data {

namespace {

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> tokenize(const std::string& line, bool comma) {
  std::vector<std::string> out;
  if (comma) {
    std::size_t start = 0;
    for (;;) {
      const auto pos = line.find(',', start);
      if (pos == std::string::npos) {
        out.push_back(strip(line.substr(start)));
        break;
      }
      out.push_back(strip(line.substr(start, pos - start)));
      start = pos + 1;
    }
  } else {
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
  }
  return out;
}

double parse_number(const std::string& token, int line_no,
                    const std::string& column) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  require_data(ec == std::errc{} && ptr == last,
               "line " + std::to_string(line_no) + ", column '" + column +
                   "': cannot parse '" + token + "' as a number");
  return value;
}

}  // namespace

Dataset Dataset::select(const std::vector<int>& indices) const {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), n_features());
  out.labels.reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const int i = indices[r];
    require_data(i >= 0 && i < n_rows(),
                 "row index " + std::to_string(i) + " out of range");
    out.features.row(static_cast<Eigen::Index>(r)) = features.row(i);
    out.labels.push_back(labels[static_cast<std::size_t>(i)]);
  }
  out.feature_names = feature_names;
  out.class_names = class_names;
  out.provenance = provenance;
  out.dropped_rows = dropped_rows;
  return out;
}

DatasetSchema DatasetSchema::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Data, std::string("schema: ") + e.what());
  }
  DatasetSchema schema;
  require_data(j.contains("label") && j["label"].is_string(),
               "schema: missing string field 'label'");
  schema.label_column = j["label"].get<std::string>();
  require_data(j.contains("features") && j["features"].is_array() &&
                   !j["features"].empty(),
               "schema: missing non-empty array 'features'");
  for (const auto& f : j["features"]) {
    require_data(f.is_string(), "schema: feature names must be strings");
    schema.feature_columns.push_back(f.get<std::string>());
  }
  if (j.contains("missing")) {
    for (const auto& tok : j["missing"]) {
      schema.missing_tokens.push_back(tok.get<std::string>());
    }
  }
  if (j.contains("categorical")) {
    for (const auto& [column, levels] : j["categorical"].items()) {
      std::map<std::string, double> mapping;
      for (const auto& [level, value] : levels.items()) {
        mapping[level] = value.get<double>();
      }
      schema.categorical[column] = mapping;
    }
  }
  return schema;
}

DatasetSchema DatasetSchema::load(const std::string& path) {
  std::ifstream in(path);
  require_data(in.good(), "cannot open schema file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

Dataset load_dataset(const std::string& path, const DatasetSchema& schema) {
  std::ifstream in(path);
  require_data(in.good(), "cannot open dataset file: " + path);

  std::string line;
  require_data(static_cast<bool>(std::getline(in, line)),
               "empty dataset file: " + path);
  const bool comma = line.find(',') != std::string::npos;
  const std::vector<std::string> header = tokenize(line, comma);

  const auto column_index = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    require_data(it != header.end(),
                 "column '" + name + "' not found in " + path);
    return static_cast<std::size_t>(it - header.begin());
  };

  const std::size_t label_at = column_index(schema.label_column);
  std::vector<std::size_t> feature_at;
  for (const auto& f : schema.feature_columns) {
    feature_at.push_back(column_index(f));
  }

  const auto is_missing = [&](const std::string& tok) {
    return std::find(schema.missing_tokens.begin(),
                     schema.missing_tokens.end(),
                     tok) != schema.missing_tokens.end();
  };

  std::vector<std::vector<double>> rows;
  std::vector<std::string> label_strings;
  int dropped = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const std::vector<std::string> tokens = tokenize(line, comma);
    require_data(tokens.size() == header.size(),
                 "line " + std::to_string(line_no) + ": expected " +
                     std::to_string(header.size()) + " fields, got " +
                     std::to_string(tokens.size()));

    bool missing = is_missing(tokens[label_at]);
    for (std::size_t c = 0; c < feature_at.size() && !missing; ++c) {
      missing = is_missing(tokens[feature_at[c]]);
    }
    if (missing) {
      ++dropped;
      continue;
    }

    std::vector<double> row;
    row.reserve(feature_at.size());
    for (std::size_t c = 0; c < feature_at.size(); ++c) {
      const std::string& column = schema.feature_columns[c];
      const std::string& token = tokens[feature_at[c]];
      const auto cat = schema.categorical.find(column);
      if (cat != schema.categorical.end()) {
        const auto level = cat->second.find(token);
        require_data(level != cat->second.end(),
                     "line " + std::to_string(line_no) + ", column '" +
                         column + "': unknown categorical level '" + token +
                         "'");
        row.push_back(level->second);
      } else {
        row.push_back(parse_number(token, line_no, column));
      }
    }
    rows.push_back(std::move(row));
    label_strings.push_back(tokens[label_at]);
  }
  require_data(!rows.empty(), "no usable rows in " + path);

  std::vector<std::string> classes = label_strings;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  require_data(classes.size() >= 2,
               "need at least two classes, found " +
                   std::to_string(classes.size()) + " in " + path);

  Dataset dataset;
  dataset.features.resize(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(feature_at.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      dataset.features(static_cast<Eigen::Index>(r),
                       static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    const auto it =
        std::lower_bound(classes.begin(), classes.end(), label_strings[r]);
    dataset.labels.push_back(static_cast<int>(it - classes.begin()) + 1);
  }
  dataset.feature_names = schema.feature_columns;
  dataset.class_names = classes;
  dataset.provenance = std::filesystem::path(path).stem().string();
  dataset.dropped_rows = dropped;
  return dataset;
}

Dataset load_named_dataset(const std::string& data_dir,
                           const std::string& stem) {
  namespace fs = std::filesystem;
  const fs::path base(data_dir);
  const DatasetSchema schema =
      DatasetSchema::load((base / (stem + ".schema.json")).string());
  return load_dataset((base / (stem + ".csv")).string(), schema);
}

}  // namespace qksvm::data
