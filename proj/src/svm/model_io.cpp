// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/svm/model_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "qksvm/util/errors.hpp"

namespace qksvm::svm {

namespace {

using Json = nlohmann::ordered_json;

Json vector_to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const Json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& value : arr) v[i++] = value.get<double>();
  return v;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    rows.push_back(vector_to_json(m.row(r).transpose()));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& rows) {
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  if (n_rows == 0) return Eigen::MatrixXd(0, 0);
  const auto n_cols = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(n_rows, n_cols);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    require_data(static_cast<Eigen::Index>(row.size()) == n_cols,
                 "model document has ragged matrix rows");
    m.row(r++) = vector_from_json(row).transpose();
  }
  return m;
}

}  // namespace

std::string model_to_json(const MulticlassModel& model) {
  Json doc;
  doc["format"] = "qksvm-model";
  doc["version"] = 1;
  doc["strategy"] = strategy_name(model.strategy);
  doc["n_classes"] = model.n_classes;
  doc["training_digest"] = model.training_digest;
  doc["warnings"] = model.warnings;

  if (model.strategy == Strategy::OneVsAll) {
    Json classifiers = Json::array();
    for (const BinaryModel& bin : model.binary) {
      Json entry;
      entry["alphas"] = vector_to_json(bin.alphas);
      entry["y"] = vector_to_json(bin.y);
      entry["bias"] = bin.bias;
      entry["support_indices"] = bin.support_indices;
      entry["C"] = bin.C;
      entry["degenerate"] = bin.degenerate;
      entry["converged"] = bin.converged;
      classifiers.push_back(std::move(entry));
    }
    doc["binary"] = std::move(classifiers);
  } else {
    Json joint;
    joint["alphas"] = matrix_to_json(model.joint.alphas);
    joint["biases"] = vector_to_json(model.joint.biases);
    joint["C"] = model.joint.C;
    joint["labels"] = model.joint.labels;
    joint["converged"] = model.joint.converged;
    doc["joint"] = std::move(joint);
  }
  return doc.dump(2);
}

MulticlassModel model_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Data,
                std::string("model document is not valid JSON: ") + e.what());
  }
  require_data(doc.value("format", "") == "qksvm-model",
               "not a model document");
  require_data(doc.value("version", 0) == 1,
               "unsupported model document version");

  MulticlassModel model;
  model.strategy = strategy_from_name(doc.at("strategy").get<std::string>());
  model.n_classes = doc.at("n_classes").get<int>();
  model.training_digest = doc.at("training_digest").get<std::uint64_t>();
  model.warnings = doc.value("warnings", std::vector<std::string>{});

  if (model.strategy == Strategy::OneVsAll) {
    for (const auto& entry : doc.at("binary")) {
      BinaryModel bin;
      bin.alphas = vector_from_json(entry.at("alphas"));
      bin.y = vector_from_json(entry.at("y"));
      bin.bias = entry.at("bias").get<double>();
      bin.support_indices = entry.at("support_indices").get<std::vector<int>>();
      bin.C = entry.at("C").get<double>();
      bin.degenerate = entry.at("degenerate").get<bool>();
      bin.converged = entry.at("converged").get<bool>();
      model.binary.push_back(std::move(bin));
    }
    require_data(static_cast<int>(model.binary.size()) == model.n_classes,
                 "model document classifier count mismatch");
  } else {
    const Json& joint = doc.at("joint");
    model.joint.alphas = matrix_from_json(joint.at("alphas"));
    model.joint.biases = vector_from_json(joint.at("biases"));
    model.joint.C = joint.at("C").get<double>();
    model.joint.labels = joint.at("labels").get<std::vector<int>>();
    model.joint.converged = joint.at("converged").get<bool>();
  }
  return model;
}

void save_model(const std::string& path, const MulticlassModel& model) {
  std::ofstream out(path, std::ios::binary);
  require_data(out.good(), "cannot open model file for writing: " + path);
  out << model_to_json(model) << '\n';
  require_data(out.good(), "failed writing model file: " + path);
}

MulticlassModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require_data(in.good(), "cannot open model file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace qksvm::svm
