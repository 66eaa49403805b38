#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace cprofit {

/// Raised when the optimizer fails to reach tolerance; carries the last
/// gradient norm for diagnostics.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double gradient_norm)
      : std::runtime_error(what), gradient_norm_(gradient_norm) {}

  double gradient_norm() const { return gradient_norm_; }

 private:
  double gradient_norm_;
};

struct LinearModel {
  Eigen::VectorXd weights;
  double intercept = 0.0;
};

struct LabeledDataset {
  Eigen::MatrixXd features;  // N x n
  Eigen::VectorXi y;         // {0,1}
  Eigen::VectorXi t;         // {0,1}
};

/// Mean negative log-likelihood plus ||w||^2 / (2 c_reg N); the intercept
/// is unpenalized (inverse-strength convention, c_reg plays the role of C).
double logistic_objective(const Eigen::Ref<const Eigen::MatrixXd>& features,
                          const Eigen::Ref<const Eigen::VectorXi>& labels,
                          double c_reg, const Eigen::VectorXd& weights,
                          double intercept);

/// Gradient of logistic_objective, weights first, intercept last.
Eigen::VectorXd logistic_gradient(
    const Eigen::Ref<const Eigen::MatrixXd>& features,
    const Eigen::Ref<const Eigen::VectorXi>& labels, double c_reg,
    const Eigen::VectorXd& weights, double intercept);

/// Minimizes logistic_objective by damped Newton with a gradient-descent
/// fallback; deterministic. Converged when the gradient norm is at most
/// 1e-6.
LinearModel train_logistic(const Eigen::Ref<const Eigen::MatrixXd>& features,
                           const Eigen::Ref<const Eigen::VectorXi>& labels,
                           double c_reg);

/// sigmoid(w . x + intercept)
double predict_proba(const LinearModel& m, const Eigen::VectorXd& x);

/// Row-wise probabilities for a feature matrix.
Eigen::VectorXd predict_proba(const LinearModel& m, const Eigen::MatrixXd& x);

/// Outcome-probability scores: one logistic model fitted on the control
/// rows (t = 0) only.
Eigen::VectorXd predictive_scores(
    const LabeledDataset& train,
    const Eigen::MatrixXd& test_features, double c_reg);

/// T-learner scores: control-arm model minus treated-arm model, matching
/// the churn orientation where positive scores mean treatment helps.
Eigen::VectorXd uplift_scores(
    const LabeledDataset& train,
    const Eigen::MatrixXd& test_features, double c_reg);

}  // namespace cprofit
