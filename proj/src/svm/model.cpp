// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/svm/model.hpp"

#include "qksvm/util/errors.hpp"

namespace qksvm::svm {

double binary_decision(const BinaryModel& model, const Eigen::VectorXd& k_row) {
  if (model.degenerate) return model.bias;
  require_config(k_row.size() == model.alphas.size(),
                 "kernel row length does not match the training set size");
  double f = model.bias;
  for (int i : model.support_indices) {
    f += model.alphas[i] * model.y[i] * k_row[i];
  }
  return f;
}

std::string strategy_name(Strategy strategy) {
  return strategy == Strategy::OneVsAll ? "one-vs-all" : "crammer-singer";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "one-vs-all") return Strategy::OneVsAll;
  if (name == "crammer-singer") return Strategy::CrammerSinger;
  throw Error(ErrorKind::Config, "unknown training strategy: " + name);
}

Eigen::VectorXd decision_values(const MulticlassModel& model,
                                const Eigen::VectorXd& k_row) {
  require_config(model.n_classes >= 2, "model has fewer than two classes");
  Eigen::VectorXd values(model.n_classes);

  if (model.strategy == Strategy::OneVsAll) {
    require_config(static_cast<int>(model.binary.size()) == model.n_classes,
                   "one-vs-all model is missing per-class classifiers");
    for (int s = 0; s < model.n_classes; ++s) {
      values[s] = binary_decision(model.binary[static_cast<std::size_t>(s)],
                                  k_row);
    }
    return values;
  }

  const JointModel& joint = model.joint;
  const auto m = static_cast<int>(joint.labels.size());
  require_config(k_row.size() == m,
                 "kernel row length does not match the training set size");
  // f_{s'} = sum_i (delta(y_i, s') A_i - alpha_i^{s'}) k_i + b_{s'}.
  const Eigen::VectorXd a_tot = joint.alphas.rowwise().sum();
  for (int s = 0; s < model.n_classes; ++s) {
    double f = joint.biases[s];
    for (int i = 0; i < m; ++i) {
      const double coef =
          (joint.labels[static_cast<std::size_t>(i)] == s + 1 ? a_tot[i] : 0.0) -
          joint.alphas(i, s);
      f += coef * k_row[i];
    }
    values[s] = f;
  }
  return values;
}

int predict(const MulticlassModel& model, const Eigen::VectorXd& k_row) {
  const Eigen::VectorXd values = decision_values(model, k_row);
  int best = 0;
  for (int s = 1; s < values.size(); ++s) {
    if (values[s] > values[best]) best = s;
  }
  return best + 1;
}

std::vector<int> predict_all(const MulticlassModel& model,
                             const Eigen::MatrixXd& k_rows) {
  std::vector<int> out(static_cast<std::size_t>(k_rows.rows()));
  for (Eigen::Index r = 0; r < k_rows.rows(); ++r) {
    out[static_cast<std::size_t>(r)] = predict(model, k_rows.row(r));
  }
  return out;
}

}  // namespace qksvm::svm
