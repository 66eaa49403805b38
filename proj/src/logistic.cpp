#include "cprofit/logistic.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace cprofit {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kGradTolerance = 1e-6;

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) - y z, numerically stable.
double nll_term(double z, double y) {
  const double softplus =
      std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z)));
  return softplus - y * z;
}

void check_training_inputs(const Eigen::Ref<const Eigen::MatrixXd>& features,
                           const Eigen::Ref<const Eigen::VectorXi>& labels,
                           double c_reg) {
  if (features.rows() < 1 || features.cols() < 1)
    throw std::invalid_argument("training data must be nonempty");
  if (labels.size() != features.rows())
    throw std::invalid_argument("label count must match feature rows");
  if (!(c_reg > 0.0)) throw std::invalid_argument("c_reg must be > 0");
  if (!features.allFinite())
    throw std::invalid_argument("features must be finite");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels[i] != 0 && labels[i] != 1)
      throw std::invalid_argument("labels must be 0 or 1");
}

}  // namespace

double logistic_objective(const Eigen::Ref<const Eigen::MatrixXd>& features,
                          const Eigen::Ref<const Eigen::VectorXi>& labels,
                          double c_reg, const Eigen::VectorXd& weights,
                          double intercept) {
  check_training_inputs(features, labels, c_reg);
  const Eigen::Index n = features.rows();
  const Eigen::VectorXd z = (features * weights).array() + intercept;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    total += nll_term(z[i], static_cast<double>(labels[i]));
  const double lambda = 1.0 / (c_reg * static_cast<double>(n));
  return total / static_cast<double>(n) + 0.5 * lambda * weights.squaredNorm();
}

Eigen::VectorXd logistic_gradient(
    const Eigen::Ref<const Eigen::MatrixXd>& features,
    const Eigen::Ref<const Eigen::VectorXi>& labels, double c_reg,
    const Eigen::VectorXd& weights, double intercept) {
  check_training_inputs(features, labels, c_reg);
  const Eigen::Index n = features.rows();
  const Eigen::Index n_features = features.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double lambda = 1.0 / (c_reg * static_cast<double>(n));
  const Eigen::VectorXd z = (features * weights).array() + intercept;
  Eigen::VectorXd residual(n);
  for (Eigen::Index i = 0; i < n; ++i)
    residual[i] = sigmoid(z[i]) - static_cast<double>(labels[i]);
  Eigen::VectorXd grad(n_features + 1);
  grad.head(n_features) =
      features.transpose() * residual * inv_n + lambda * weights;
  grad[n_features] = residual.sum() * inv_n;
  return grad;
}

LinearModel train_logistic(const Eigen::Ref<const Eigen::MatrixXd>& features,
                           const Eigen::Ref<const Eigen::VectorXi>& labels,
                           double c_reg) {
  check_training_inputs(features, labels, c_reg);
  const Eigen::Index n_samples = features.rows();
  const Eigen::Index n_features = features.cols();
  const double inv_n = 1.0 / static_cast<double>(n_samples);
  const double lambda = 1.0 / (c_reg * static_cast<double>(n_samples));

  Eigen::VectorXd w = Eigen::VectorXd::Zero(n_features);
  double b = 0.0;
  double current = logistic_objective(features, labels, c_reg, w, b);
  double grad_norm = 0.0;

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const Eigen::VectorXd z = (features * w).array() + b;
    Eigen::VectorXd p(n_samples);
    for (Eigen::Index i = 0; i < n_samples; ++i) p[i] = sigmoid(z[i]);

    Eigen::VectorXd grad(n_features + 1);
    {
      Eigen::VectorXd residual = p;
      for (Eigen::Index i = 0; i < n_samples; ++i)
        residual[i] -= static_cast<double>(labels[i]);
      grad.head(n_features) =
          features.transpose() * residual * inv_n + lambda * w;
      grad[n_features] = residual.sum() * inv_n;
    }
    grad_norm = grad.norm();
    if (grad_norm <= kGradTolerance) return {w, b};

    // Newton direction on the augmented (weights, intercept) system.
    const Eigen::VectorXd irls = (p.array() * (1.0 - p.array())).matrix();
    Eigen::MatrixXd hessian(n_features + 1, n_features + 1);
    hessian.topLeftCorner(n_features, n_features) =
        features.transpose() * irls.asDiagonal() * features * inv_n;
    hessian.topLeftCorner(n_features, n_features).diagonal().array() += lambda;
    const Eigen::VectorXd cross = features.transpose() * irls * inv_n;
    hessian.topRightCorner(n_features, 1) = cross;
    hessian.bottomLeftCorner(1, n_features) = cross.transpose();
    hessian(n_features, n_features) = irls.sum() * inv_n;

    Eigen::VectorXd step;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
    bool have_newton = ldlt.info() == Eigen::Success;
    if (have_newton) {
      step = ldlt.solve(-grad);
      have_newton = step.allFinite() && grad.dot(step) < 0.0;
    }
    if (!have_newton) step = -grad;  // ill-conditioned solve: descend

    // Backtracking line search.
    double scale = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const Eigen::VectorXd w_next = w + scale * step.head(n_features);
      const double b_next = b + scale * step[n_features];
      const double next =
          logistic_objective(features, labels, c_reg, w_next, b_next);
      if (next < current) {
        w = w_next;
        b = b_next;
        current = next;
        moved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!moved) {
      // No descent possible at double precision; accept if near tolerance.
      if (grad_norm <= 1e2 * kGradTolerance) return {w, b};
      throw ConvergenceError("logistic training stalled", grad_norm);
    }
  }
  throw ConvergenceError("logistic training did not converge", grad_norm);
}

double predict_proba(const LinearModel& m, const Eigen::VectorXd& x) {
  if (x.size() != m.weights.size())
    throw std::invalid_argument("feature dimension mismatch");
  return sigmoid(m.weights.dot(x) + m.intercept);
}

Eigen::VectorXd predict_proba(const LinearModel& m, const Eigen::MatrixXd& x) {
  if (x.cols() != m.weights.size())
    throw std::invalid_argument("feature dimension mismatch");
  const Eigen::VectorXd z = (x * m.weights).array() + m.intercept;
  Eigen::VectorXd out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = sigmoid(z[i]);
  return out;
}

namespace {

LinearModel fit_arm(const LabeledDataset& train, int arm, double c_reg) {
  const Eigen::Index count = (train.t.array() == arm).count();
  if (count == 0)
    throw std::invalid_argument(arm == 0 ? "no control samples (t=0)"
                                         : "no treated samples (t=1)");
  Eigen::MatrixXd x(count, train.features.cols());
  Eigen::VectorXi y(count);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < train.t.size(); ++i) {
    if (train.t[i] == arm) {
      x.row(row) = train.features.row(i);
      y[row] = train.y[i];
      ++row;
    }
  }
  return train_logistic(x, y, c_reg);
}

}  // namespace

Eigen::VectorXd predictive_scores(
    const LabeledDataset& train,
    const Eigen::MatrixXd& test_features, double c_reg) {
  const LinearModel control = fit_arm(train, 0, c_reg);
  return predict_proba(control, test_features);
}

Eigen::VectorXd uplift_scores(
    const LabeledDataset& train,
    const Eigen::MatrixXd& test_features, double c_reg) {
  const LinearModel control = fit_arm(train, 0, c_reg);
  const LinearModel treated = fit_arm(train, 1, c_reg);
  return predict_proba(control, test_features) -
         predict_proba(treated, test_features);
}

}  // namespace cprofit
