#pragma once

#include <Eigen/Core>
#include <array>

namespace cprofit {

/// Entropy of a Bernoulli(p) in nats, with 0 log 0 = 0.
double binary_entropy(double p);

struct MutualInformation {
  double mi = 0.0;     // nats
  double ratio = 0.0;  // mi / H(prior), 0 when the prior entropy vanishes
};

/// Plug-in mutual information between the features and a binary outcome,
/// from the per-unit conditional probabilities: the prior is their mean,
/// the conditional entropy their mean binary entropy. Tiny negatives from
/// cancellation are clamped to zero.
MutualInformation empirical_mutual_information(
    const Eigen::Ref<const Eigen::VectorXd>& conditional_probs);

/// Expected conditional entropies (nats) under a Dirichlet prior on the
/// joint potential-outcome probabilities.
struct EntropyReport {
  double joint = 0.0;
  double marginal_y0 = 0.0;
  double marginal_y1 = 0.0;
};

/// Analytic digamma forms of the expected conditional entropy for
/// mu ~ Dirichlet(a, b, c, d); the marginals use S0 = beta + delta and
/// S1 = gamma + delta.
EntropyReport dirichlet_conditional_entropy(double a, double b, double c,
                                            double d);

/// Smallest concentration A (on fixed outcome proportions) whose implied
/// y0 information ratio, 1 - E[H(y0|mu)] / H(y0), matches the target.
/// Bisection on log A to 1e-4 absolute tolerance on the ratio. A target of
/// zero returns the no-information stand-in A = 1e5.
double concentration_for_mi_ratio(const std::array<double, 4>& proportions,
                                  double target_ratio);

}  // namespace cprofit
