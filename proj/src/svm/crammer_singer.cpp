// Copyright 2026 the qksvm authors
// SPDX-License-Identifier: Apache-2.0
#include "qksvm/svm/crammer_singer.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qksvm/util/errors.hpp"

namespace qksvm::svm {

namespace {

struct Problem {
  const std::vector<int>& labels;  // 1..l
  int m;
  int l;

  int cls(int i) const { return labels[static_cast<std::size_t>(i)] - 1; }
};

// `n_classes` widens the class universe beyond the labels actually seen,
// for training on subsets of a larger problem; 0 infers it from the labels.
Problem make_problem(const std::vector<int>& labels, int n_classes = 0) {
  require_config(!labels.empty(), "empty training set");
  int l = 0;
  for (int label : labels) {
    require_data(label >= 1, "class labels must be 1-based");
    l = std::max(l, label);
  }
  require_config(n_classes == 0 || n_classes >= l,
                 "n_classes is smaller than the largest label");
  l = std::max(l, n_classes);
  require_data(l >= 2, "multiclass training needs at least two classes");
  return Problem{labels, static_cast<int>(labels.size()), l};
}

void check_kernel(const Problem& prob, const Eigen::MatrixXd& K) {
  require_config(K.rows() == K.cols(), "kernel matrix must be square");
  require_config(K.rows() == prob.m,
                 "label count does not match the kernel matrix");
}

void check_shape(const Problem& prob, const Eigen::MatrixXd& alphas) {
  require_config(alphas.rows() == prob.m && alphas.cols() == prob.l,
                 "alpha matrix must be m x l");
}

// B_i^s = delta(y_i, s) A_i - alpha_i^s, the class-s expansion coefficients.
Eigen::MatrixXd expansion_coefficients(const Problem& prob,
                                       const Eigen::MatrixXd& alphas) {
  const Eigen::VectorXd a_tot = alphas.rowwise().sum();
  Eigen::MatrixXd b = -alphas;
  for (int i = 0; i < prob.m; ++i) b(i, prob.cls(i)) += a_tot[i];
  return b;
}

// Objective in the compact form 2 sum(alpha) - 1/2 sum_s (B^s)^T K B^s. This
// is the evaluation the solver iterates on; the two public entry points
// below evaluate the paper-facing sums and all three must agree.
double objective_compact(const Problem& prob, const Eigen::MatrixXd& K,
                         const Eigen::MatrixXd& alphas) {
  const Eigen::MatrixXd b = expansion_coefficients(prob, alphas);
  return 2.0 * alphas.sum() - 0.5 * (b.transpose() * K * b).trace();
}

// Gradient of the compact objective over the free coordinates:
// d/d alpha_p^t = 2 - F_p^{y_p} + F_p^t with F = K B; pinned coordinates
// (t = y_p) are held at zero.
Eigen::MatrixXd objective_gradient(const Problem& prob,
                                   const Eigen::MatrixXd& K,
                                   const Eigen::MatrixXd& alphas) {
  const Eigen::MatrixXd f = K * expansion_coefficients(prob, alphas);
  Eigen::MatrixXd grad(prob.m, prob.l);
  for (int p = 0; p < prob.m; ++p) {
    const int yp = prob.cls(p);
    for (int t = 0; t < prob.l; ++t) {
      grad(p, t) = (t == yp) ? 0.0 : 2.0 - f(p, yp) + f(p, t);
    }
  }
  return grad;
}

// Residuals of the equality constraints for s' = 1..l-1 (the l constraint
// rows sum to zero, so the last is redundant):
// r_{s'} = sum_i alpha_i^{s'} - sum_{i : y_i = s'} A_i.
Eigen::VectorXd equality_residuals(const Problem& prob,
                                   const Eigen::MatrixXd& alphas) {
  const Eigen::VectorXd a_tot = alphas.rowwise().sum();
  Eigen::VectorXd r = alphas.leftCols(prob.l - 1).colwise().sum();
  for (int i = 0; i < prob.m; ++i) {
    const int yi = prob.cls(i);
    if (yi < prob.l - 1) r[yi] -= a_tot[i];
  }
  return r;
}

// Euclidean projection onto the equality subspace. The constraint matrix A
// over the free coordinates has row s' entries delta(t, s') - delta(y_p, s'),
// giving the closed-form Gram (restricted to s, s' in 1..l-1)
//   (A A^T)_{s,s}  = (m - n_s) + n_s (l - 1),
//   (A A^T)_{s,s'} = -(n_s + n_{s'}),
// where n_s counts training points of class s.
class EqualityProjector {
 public:
  explicit EqualityProjector(const Problem& prob) : prob_(prob) {
    std::vector<int> counts(static_cast<std::size_t>(prob.l), 0);
    for (int label : prob.labels) ++counts[static_cast<std::size_t>(label - 1)];
    const int k = prob.l - 1;
    Eigen::MatrixXd gram(k, k);
    for (int s = 0; s < k; ++s) {
      const double n_s = counts[static_cast<std::size_t>(s)];
      for (int t = 0; t < k; ++t) {
        gram(s, t) = (s == t) ? (prob.m - n_s) + n_s * (prob.l - 1)
                              : -(n_s + counts[static_cast<std::size_t>(t)]);
      }
    }
    solver_.compute(gram);
    require_numerical(solver_.info() == Eigen::Success,
                      "equality constraint system is not factorizable");
  }

  void project_in_place(Eigen::MatrixXd& alphas) const {
    const Eigen::VectorXd lambda =
        solver_.solve(equality_residuals(prob_, alphas));
    // alpha_p^t -= lambda_t - lambda_{y_p}, with lambda_l = 0.
    for (int p = 0; p < prob_.m; ++p) {
      const int yp = prob_.cls(p);
      const double lam_y = (yp < prob_.l - 1) ? lambda[yp] : 0.0;
      for (int t = 0; t < prob_.l; ++t) {
        if (t == yp) continue;
        const double lam_t = (t < prob_.l - 1) ? lambda[t] : 0.0;
        alphas(p, t) -= lam_t - lam_y;
      }
    }
  }

 private:
  const Problem& prob_;
  Eigen::LDLT<Eigen::MatrixXd> solver_;
};

void clamp_to_box(const Problem& prob, Eigen::MatrixXd& alphas, double C) {
  for (int p = 0; p < prob.m; ++p) {
    const int yp = prob.cls(p);
    for (int t = 0; t < prob.l; ++t) {
      alphas(p, t) = (t == yp) ? 0.0 : std::clamp(alphas(p, t), 0.0, C);
    }
  }
}

// Dykstra's alternating projections onto box intersect subspace. The
// subspace projection needs no correction term; the box is the only
// non-affine set.
Eigen::MatrixXd project_feasible(const Problem& prob,
                                 const EqualityProjector& projector,
                                 Eigen::MatrixXd alphas, double C) {
  Eigen::MatrixXd correction = Eigen::MatrixXd::Zero(prob.m, prob.l);
  const double eps = 1e-12 * std::max(1.0, C);
  for (int round = 0; round < 4000; ++round) {
    projector.project_in_place(alphas);
    Eigen::MatrixXd relaxed = alphas + correction;
    Eigen::MatrixXd boxed = relaxed;
    clamp_to_box(prob, boxed, C);
    correction = relaxed - boxed;
    const double moved = (boxed - alphas).cwiseAbs().maxCoeff();
    alphas = std::move(boxed);
    if (moved <= eps) break;
  }
  // Land exactly on the subspace; the final correction is below eps.
  projector.project_in_place(alphas);
  return alphas;
}

void validate_feasible(const Problem& prob, const Eigen::MatrixXd& alphas) {
  const double scale = std::max(1.0, alphas.cwiseAbs().maxCoeff());
  for (int i = 0; i < prob.m; ++i) {
    require_config(std::abs(alphas(i, prob.cls(i))) <= 1e-9 * scale,
                   "alpha_i^{y_i} must be pinned to zero");
    for (int s = 0; s < prob.l; ++s) {
      require_config(alphas(i, s) >= -1e-9 * scale,
                     "alphas must be non-negative");
    }
  }
  require_config(
      crammer_singer_constraint_residual(alphas, prob.labels) <= 1e-6 * scale,
      "alphas violate the per-class equality constraints");
}

}  // namespace

double crammer_singer_objective(const Eigen::MatrixXd& alphas,
                                const Eigen::MatrixXd& K,
                                const std::vector<int>& labels) {
  const Problem prob = make_problem(labels, static_cast<int>(alphas.cols()));
  check_kernel(prob, K);
  check_shape(prob, alphas);
  validate_feasible(prob, alphas);

  const Eigen::VectorXd a_tot = alphas.rowwise().sum();
  double quad = 0.0;
  for (int i = 0; i < prob.m; ++i) {
    const int yi = prob.cls(i);
    for (int j = 0; j < prob.m; ++j) {
      const int yj = prob.cls(j);
      double bracket = (yi == yj) ? -a_tot[i] * a_tot[j] : 0.0;
      for (int s = 0; s < prob.l; ++s) {
        bracket += 2.0 * alphas(i, s) * alphas(j, yi) -
                   alphas(i, s) * alphas(j, s);
      }
      quad += bracket * K(i, j);
    }
  }
  return 2.0 * alphas.sum() + 0.5 * quad;
}

double crammer_singer_objective_expanded(const Eigen::MatrixXd& alphas,
                                         const Eigen::MatrixXd& K,
                                         const std::vector<int>& labels) {
  const Problem prob = make_problem(labels, static_cast<int>(alphas.cols()));
  check_kernel(prob, K);
  check_shape(prob, alphas);
  validate_feasible(prob, alphas);

  const Eigen::VectorXd a_tot = alphas.rowwise().sum();
  double quad = 0.0;
  for (int s = 0; s < prob.l; ++s) {
    for (int i = 0; i < prob.m; ++i) {
      const int yi = prob.cls(i);
      for (int j = 0; j < prob.m; ++j) {
        const int yj = prob.cls(j);
        const double term = (yi == s ? a_tot[i] : 0.0) *
                                (yj == s ? a_tot[j] : 0.0) -
                            2.0 * alphas(i, s) * (yj == yi ? a_tot[j] : 0.0) +
                            2.0 * alphas(i, s) * alphas(j, yi) -
                            alphas(i, s) * alphas(j, s);
        quad += term * K(i, j);
      }
    }
  }
  return 2.0 * alphas.sum() + 0.5 * quad;
}

double crammer_singer_constraint_residual(const Eigen::MatrixXd& alphas,
                                          const std::vector<int>& labels) {
  const Problem prob = make_problem(labels, static_cast<int>(alphas.cols()));
  check_shape(prob, alphas);
  const Eigen::VectorXd a_tot = alphas.rowwise().sum();
  double worst = 0.0;
  for (int s = 0; s < prob.l; ++s) {
    double r = alphas.col(s).sum();
    for (int i = 0; i < prob.m; ++i) {
      if (prob.cls(i) == s) r -= a_tot[i];
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

Eigen::MatrixXd crammer_singer_project(const Eigen::MatrixXd& alphas,
                                       const std::vector<int>& labels,
                                       double C) {
  const Problem prob = make_problem(labels, static_cast<int>(alphas.cols()));
  check_shape(prob, alphas);
  require_config(C > 0.0, "penalty C must be positive");
  const EqualityProjector projector(prob);
  return project_feasible(prob, projector, alphas, C);
}

MulticlassModel crammer_singer_train(const Eigen::MatrixXd& K,
                                     const std::vector<int>& labels, double C,
                                     double tol, int max_iters,
                                     int n_classes) {
  const Problem prob = make_problem(labels, n_classes);
  check_kernel(prob, K);
  require_config(C > 0.0, "penalty C must be positive");
  const EqualityProjector projector(prob);

  Eigen::MatrixXd alphas = Eigen::MatrixXd::Zero(prob.m, prob.l);
  double obj = objective_compact(prob, K, alphas);
  double step = 1.0 / std::max(1.0, K.diagonal().maxCoeff() * prob.l);
  bool converged = false;

  for (int iter = 0; iter < max_iters; ++iter) {
    const Eigen::MatrixXd grad = objective_gradient(prob, K, alphas);

    // Backtracking along the projection arc: accept the first step whose
    // projected point improves the objective by the Armijo fraction of the
    // linearized gain (which is non-negative for projections).
    Eigen::MatrixXd candidate;
    double candidate_obj = obj;
    bool accepted = false;
    for (double s = step; s >= 1e-14; s *= 0.5) {
      candidate = project_feasible(prob, projector, alphas + s * grad, C);
      candidate_obj = objective_compact(prob, K, candidate);
      const double linear_gain =
          (grad.array() * (candidate - alphas).array()).sum();
      if (candidate_obj >= obj + 1e-4 * linear_gain && candidate_obj >= obj) {
        step = std::min(s * 2.0, 1e6);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      converged = true;
      break;
    }
    const double moved = (candidate - alphas).cwiseAbs().maxCoeff();
    alphas = std::move(candidate);
    obj = candidate_obj;
    if (moved <= tol * std::max(1.0, C)) {
      converged = true;
      break;
    }
  }

  // Bias recovery: every free multiplier alpha_p^t in (0, C) pins the margin
  // equality b_{y_p} - b_t = 2 - (F_p^{y_p} - F_p^t). Solve all of them in
  // least squares under the gauge sum_s b_s = 0 (the margin rows are
  // shift-invariant, the gauge row fixes the shift).
  const Eigen::MatrixXd f = K * expansion_coefficients(prob, alphas);
  std::vector<std::pair<std::pair<int, int>, double>> equations;
  for (int p = 0; p < prob.m; ++p) {
    const int yp = prob.cls(p);
    for (int t = 0; t < prob.l; ++t) {
      if (t == yp) continue;
      const double a = alphas(p, t);
      if (a > kSupportThreshold && a < C - kSupportThreshold) {
        equations.push_back({{yp, t}, 2.0 - (f(p, yp) - f(p, t))});
      }
    }
  }
  Eigen::VectorXd biases = Eigen::VectorXd::Zero(prob.l);
  if (!equations.empty()) {
    const auto rows = static_cast<Eigen::Index>(equations.size()) + 1;
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(rows, prob.l);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    for (Eigen::Index r = 0; r < rows - 1; ++r) {
      const auto& [pair, value] = equations[static_cast<std::size_t>(r)];
      lhs(r, pair.first) = 1.0;
      lhs(r, pair.second) = -1.0;
      rhs[r] = value;
    }
    lhs.row(rows - 1).setOnes();
    biases = lhs.completeOrthogonalDecomposition().solve(rhs);
  }

  MulticlassModel model;
  model.strategy = Strategy::CrammerSinger;
  model.n_classes = prob.l;
  model.joint.alphas = std::move(alphas);
  model.joint.biases = std::move(biases);
  model.joint.C = C;
  model.joint.labels = labels;
  model.joint.converged = converged;
  if (!converged) {
    model.warnings.push_back(
        "joint dual solver stopped at the iteration budget before reaching "
        "the step tolerance; returning the best iterate");
  }
  return model;
}

}  // namespace qksvm::svm
