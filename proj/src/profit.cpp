#include "cprofit/profit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cprofit {

namespace {

void check_profile(const IndividualProfile& p) {
  if (!(p.s0 >= 0.0 && p.s0 <= 1.0 && p.s1 >= 0.0 && p.s1 <= 1.0))
    throw std::invalid_argument("profile probabilities must lie in [0,1]");
}

int targeted_count_for(std::size_t n, double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("treatment rate must lie in (0,1)");
  // Guard against rho*N landing an ulp above its mathematical value.
  const double scaled = static_cast<double>(n) * rho;
  int k = static_cast<int>(std::ceil(scaled - 1e-9));
  k = std::max(1, std::min(static_cast<int>(n), k));
  return k;
}

}  // namespace

double individual_action_profit(const IndividualProfile& p, int t) {
  check_profile(p);
  if (t != 0 && t != 1) throw std::invalid_argument("treatment must be 0 or 1");
  const double st = (t == 0) ? p.s0 : p.s1;
  return p.cb.value(0, t) * (1.0 - st) + p.cb.value(1, t) * st;
}

double individual_causal_profit(const IndividualProfile& p) {
  return individual_action_profit(p, 1) - individual_action_profit(p, 0);
}

std::vector<int> ranked_order(const Population& pop) {
  std::vector<int> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return pop.individuals[a].score > pop.individuals[b].score;
  });
  return order;
}

RateThreshold threshold_for_rate(const Population& pop, double rho) {
  if (pop.individuals.empty())
    throw std::invalid_argument("population must be nonempty");
  const int k = targeted_count_for(pop.size(), rho);
  const std::vector<int> order = ranked_order(pop);
  return {pop.individuals[order[k - 1]].score, k};
}

CampaignProfit campaign_profits(const Population& pop, double rho) {
  if (pop.individuals.empty())
    throw std::invalid_argument("population must be nonempty");
  const std::size_t n = pop.size();
  const int k = targeted_count_for(n, rho);
  const std::vector<int> order = ranked_order(pop);

  double sum_pi1_targeted = 0.0;
  double sum_pi0_rest = 0.0;
  double sum_pi0_all = 0.0;
  for (std::size_t rank = 0; rank < n; ++rank) {
    const IndividualProfile& p = pop.individuals[order[rank]];
    if (rank < static_cast<std::size_t>(k))
      sum_pi1_targeted += individual_action_profit(p, 1);
    else
      sum_pi0_rest += individual_action_profit(p, 0);
    sum_pi0_all += individual_action_profit(p, 0);
  }

  const double realized_rho = static_cast<double>(k) / static_cast<double>(n);
  CampaignProfit result;
  result.action = realized_rho * (sum_pi1_targeted / k) +
                  (k == static_cast<int>(n)
                       ? 0.0
                       : (1.0 - realized_rho) * (sum_pi0_rest /
                                                 static_cast<double>(n - k)));
  result.baseline = sum_pi0_all / static_cast<double>(n);
  result.causal = result.action - result.baseline;
  return result;
}

double verbeke_causal_profit(const Population& pop, double tau,
                             const CostBenefitMatrix& cb) {
  if (pop.individuals.empty())
    throw std::invalid_argument("population must be nonempty");
  for (const IndividualProfile& p : pop.individuals) {
    check_profile(p);
    if (!(p.cb == cb))
      throw std::invalid_argument(
          "verbeke_causal_profit requires a constant cost-benefit matrix");
  }

  const double n = static_cast<double>(pop.size());
  // Probability-weighted empirical CDFs of the score conditional on each
  // potential outcome, F_yt(tau) = P(score < tau | y_t = y).
  double w1[2] = {0.0, 0.0};   // total weight of y_t = 1, t = 0/1
  double f1[2] = {0.0, 0.0};   // weight with score < tau
  double w0[2] = {0.0, 0.0};   // total weight of y_t = 0
  double f0[2] = {0.0, 0.0};
  for (const IndividualProfile& p : pop.individuals) {
    const bool below = p.score < tau;
    const double st[2] = {p.s0, p.s1};
    for (int t = 0; t < 2; ++t) {
      w1[t] += st[t];
      w0[t] += 1.0 - st[t];
      if (below) {
        f1[t] += st[t];
        f0[t] += 1.0 - st[t];
      }
    }
  }
  const auto cdf = [](double part, double whole) {
    return whole > 0.0 ? part / whole : 0.0;
  };
  const double s0_bar = w1[0] / n;
  const double s1_bar = w1[1] / n;

  // Causal confusion matrix at tau, minus its tau = +inf limit, against CB.
  const double cf00 = (1.0 - s0_bar) * cdf(f0[0], w0[0]);
  const double cf10 = s0_bar * cdf(f1[0], w1[0]);
  const double cf01 = (1.0 - s1_bar) * (1.0 - cdf(f0[1], w0[1]));
  const double cf11 = s1_bar * (1.0 - cdf(f1[1], w1[1]));
  const double e00 = cf00 - (1.0 - s0_bar);
  const double e10 = cf10 - s0_bar;
  const double e01 = cf01;
  const double e11 = cf11;
  return e00 * cb.cb00 + e01 * cb.cb01 + e10 * cb.cb10 + e11 * cb.cb11;
}

}  // namespace cprofit
