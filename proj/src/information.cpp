#include "cprofit/information.hpp"

#include <cmath>
#include <stdexcept>

#include "cprofit/special.hpp"

namespace cprofit {

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binary_entropy: p must be in [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

MutualInformation empirical_mutual_information(
    const Eigen::Ref<const Eigen::VectorXd>& conditional_probs) {
  if (conditional_probs.size() == 0)
    throw std::invalid_argument("empirical_mutual_information: empty input");
  const double n = static_cast<double>(conditional_probs.size());
  double prior = 0.0;
  double conditional = 0.0;
  for (Eigen::Index i = 0; i < conditional_probs.size(); ++i) {
    prior += conditional_probs[i];
    conditional += binary_entropy(conditional_probs[i]);
  }
  prior /= n;
  conditional /= n;
  const double prior_entropy = binary_entropy(prior);
  MutualInformation result;
  result.mi = std::max(0.0, prior_entropy - conditional);
  result.ratio =
      prior_entropy > 0.0 ? std::min(1.0, result.mi / prior_entropy) : 0.0;
  return result;
}

EntropyReport dirichlet_conditional_entropy(double a, double b, double c,
                                            double d) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0))
    throw std::invalid_argument(
        "dirichlet_conditional_entropy: parameters must be > 0");
  const double total = a + b + c + d;
  const double psi_total = digamma(total + 1.0);
  const auto marginal = [&](double one, double zero) {
    return psi_total - (one / total * digamma(one + 1.0) +
                        zero / total * digamma(zero + 1.0));
  };
  EntropyReport report;
  report.joint = psi_total -
                 (a / total * digamma(a + 1.0) + b / total * digamma(b + 1.0) +
                  c / total * digamma(c + 1.0) + d / total * digamma(d + 1.0));
  report.marginal_y0 = marginal(b + d, a + c);
  report.marginal_y1 = marginal(c + d, a + b);
  return report;
}

double concentration_for_mi_ratio(const std::array<double, 4>& proportions,
                                  double target_ratio) {
  double sum = 0.0;
  for (double p : proportions) {
    if (!(p > 0.0))
      throw std::invalid_argument("proportions must be positive");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("proportions must sum to 1");
  if (!(target_ratio >= 0.0 && target_ratio < 1.0))
    throw std::invalid_argument("target ratio must lie in [0,1)");
  if (target_ratio == 0.0) return 1e5;

  const double s0 = proportions[1] + proportions[3];
  const double h0 = binary_entropy(s0);
  if (h0 <= 0.0)
    throw std::invalid_argument("degenerate outcome marginal");
  const auto ratio_at = [&](double log_a) {
    const double a = std::exp(log_a);
    const EntropyReport rep = dirichlet_conditional_entropy(
        proportions[0] * a, proportions[1] * a, proportions[2] * a,
        proportions[3] * a);
    return 1.0 - rep.marginal_y0 / h0;
  };

  double lo = std::log(1e-6);
  double hi = std::log(1e9);
  // ratio is decreasing in A: 1 at A -> 0, 0 at A -> infinity.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double r = ratio_at(mid);
    if (std::fabs(r - target_ratio) <= 1e-4) return std::exp(mid);
    if (r > target_ratio)
      lo = mid;
    else
      hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace cprofit
