#pragma once

#include <vector>

namespace cprofit {

/// 2x2 monetary values indexed by (outcome y, treatment t).
struct CostBenefitMatrix {
  double cb00 = 0.0;  // y=0, t=0
  double cb01 = 0.0;  // y=0, t=1
  double cb10 = 0.0;  // y=1, t=0
  double cb11 = 0.0;  // y=1, t=1

  double value(int y, int t) const {
    return y == 0 ? (t == 0 ? cb00 : cb01) : (t == 0 ? cb10 : cb11);
  }

  /// All value sits on the y=0 outcome and the treatment is free.
  static CostBenefitMatrix unitary() { return {1.0, 1.0, 0.0, 0.0}; }

  friend bool operator==(const CostBenefitMatrix&,
                         const CostBenefitMatrix&) = default;
};

/// One unit: true conditional outcome probabilities under each arm, its
/// cost-benefit matrix and the model score used for ranking.
struct IndividualProfile {
  double s0 = 0.0;  // P(y0 = 1 | x)
  double s1 = 0.0;  // P(y1 = 1 | x)
  CostBenefitMatrix cb;
  double score = 0.0;
};

struct Population {
  std::vector<IndividualProfile> individuals;

  std::size_t size() const { return individuals.size(); }
};

/// Expected profit of carrying out action t on this individual.
double individual_action_profit(const IndividualProfile& p, int t);

/// pi(x) = pi_1(x) - pi_0(x): the expected gain of treating over not.
double individual_causal_profit(const IndividualProfile& p);

/// Ranking permutation: score descending, ties by input index ascending.
std::vector<int> ranked_order(const Population& pop);

struct RateThreshold {
  double tau = 0.0;
  int targeted_count = 0;
};

/// Score cutoff that targets the ceil(N*rho) highest-ranked individuals.
RateThreshold threshold_for_rate(const Population& pop, double rho);

struct CampaignProfit {
  double action = 0.0;    // treat top rho, leave the rest
  double baseline = 0.0;  // treat nobody
  double causal = 0.0;    // action - baseline
};

/// Per-capita campaign profits at treatment rate rho; the realized rate is
/// targeted_count / N.
CampaignProfit campaign_profits(const Population& pop, double rho);

/// Causal profit from the causal confusion matrix route: score-CDF terms
/// conditional on each potential outcome, weighted by the probabilities,
/// against a cost-benefit matrix that must be constant across the
/// population. Equals campaign_profits(...).causal at rho = fraction of
/// scores >= tau.
double verbeke_causal_profit(const Population& pop, double tau,
                             const CostBenefitMatrix& cb);

}  // namespace cprofit
