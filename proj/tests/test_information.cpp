#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cprofit/information.hpp"
#include "cprofit/rng.hpp"

using namespace cprofit;

TEST_CASE("binary entropy endpoints, maximum and symmetry") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(std::fabs(binary_entropy(0.5) - std::log(2.0)) < 1e-7);
  // direct formula oracle at p = 0.4
  const double direct = -0.4 * std::log(0.4) - 0.6 * std::log(0.6);
  CHECK(std::fabs(binary_entropy(0.4) - 0.6730117) < 1e-6);
  CHECK(binary_entropy(0.4) == doctest::Approx(direct).epsilon(1e-12));

  RngStream rng = RngStream::root(1);
  for (int i = 0; i < 100; ++i) {
    const double p = rng.uniform01();
    CHECK(std::fabs(binary_entropy(p) - binary_entropy(1.0 - p)) < 1e-12);
  }
  CHECK_THROWS_AS(binary_entropy(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.01), std::invalid_argument);
}

TEST_CASE("empirical mutual information worked cases") {
  Eigen::VectorXd constant = Eigen::VectorXd::Constant(50, 0.4);
  const MutualInformation none = empirical_mutual_information(constant);
  CHECK(none.mi < 1e-12);  // exact zero up to accumulation error
  CHECK(none.ratio < 1e-12);

  Eigen::VectorXd deterministic(10);
  deterministic << 0, 0, 0, 0, 0, 1, 1, 1, 1, 1;
  const MutualInformation full = empirical_mutual_information(deterministic);
  CHECK(std::fabs(full.mi - std::log(2.0)) < 1e-12);
  CHECK(full.ratio == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::VectorXd pair(2);
  pair << 0.2, 0.6;
  const MutualInformation mixed = empirical_mutual_information(pair);
  const double expected = binary_entropy(0.4) -
                          0.5 * (binary_entropy(0.2) + binary_entropy(0.6));
  CHECK(std::fabs(mixed.mi - 0.0863046) < 1e-5);
  CHECK(mixed.mi == doctest::Approx(expected).epsilon(1e-12));

  Eigen::VectorXd empty(0);
  CHECK_THROWS_AS(empirical_mutual_information(empty), std::invalid_argument);
}

TEST_CASE("dirichlet conditional entropy closed forms") {
  // Flat prior: psi(5) - psi(2) = 13/12.
  const EntropyReport flat = dirichlet_conditional_entropy(1, 1, 1, 1);
  CHECK(std::fabs(flat.joint - 13.0 / 12.0) < 1e-7);

  // Large concentration approaches the unconditional entropy.
  const double a = 0.6e4, b = 0.2e4, c = 0.1e4, d = 0.1e4;
  const double unconditional =
      -(0.6 * std::log(0.6) + 0.2 * std::log(0.2) + 2 * 0.1 * std::log(0.1));
  const EntropyReport big = dirichlet_conditional_entropy(a, b, c, d);
  CHECK(std::fabs(big.joint - unconditional) < 0.01);

  // Tiny concentration collapses the conditional entropy.
  const EntropyReport tiny = dirichlet_conditional_entropy(
      0.6e-3, 0.2e-3, 0.1e-3, 0.1e-3);
  CHECK(tiny.joint >= 0.0);
  CHECK(tiny.joint <= 0.01);

  // Marginal for (6,2,1,1) pools the outcome-one mass b + d = 3 against
  // a + c = 7; reference value computed independently.
  const EntropyReport skew = dirichlet_conditional_entropy(6, 2, 1, 1);
  CHECK(std::fabs(skew.marginal_y0 - 0.5639682539682545) < 1e-9);

  CHECK_THROWS_AS(dirichlet_conditional_entropy(0, 1, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("analytic conditional entropies match Monte Carlo") {
  RngStream rng = RngStream::root(7);
  for (int trial = 0; trial < 4; ++trial) {
    std::array<double, 4> proportions;
    double sum = 0.0;
    for (double& p : proportions) {
      p = 0.05 + rng.uniform01();
      sum += p;
    }
    for (double& p : proportions) p /= sum;
    const double concentration = std::exp(
        std::log(0.2) + rng.uniform01() * (std::log(50.0) - std::log(0.2)));
    const std::array<double, 4> m = {
        proportions[0] * concentration, proportions[1] * concentration,
        proportions[2] * concentration, proportions[3] * concentration};
    const EntropyReport analytic =
        dirichlet_conditional_entropy(m[0], m[1], m[2], m[3]);

    const int draws = 200000;
    double joint_sum = 0.0, joint_sq = 0.0;
    double h0_sum = 0.0, h0_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
      const std::array<double, 4> mu = sample_dirichlet(m, rng);
      double h = 0.0;
      for (double v : mu)
        if (v > 0.0) h -= v * std::log(v);
      joint_sum += h;
      joint_sq += h * h;
      const double h0 = binary_entropy(std::min(1.0, mu[1] + mu[3]));
      h0_sum += h0;
      h0_sq += h0 * h0;
    }
    const double joint_mean = joint_sum / draws;
    const double joint_se = std::sqrt(
        (joint_sq / draws - joint_mean * joint_mean) / draws);
    const double h0_mean = h0_sum / draws;
    const double h0_se =
        std::sqrt((h0_sq / draws - h0_mean * h0_mean) / draws);
    CHECK(std::fabs(analytic.joint - joint_mean) < 4.0 * joint_se + 1e-6);
    CHECK(std::fabs(analytic.marginal_y0 - h0_mean) < 4.0 * h0_se + 1e-6);
  }
}

TEST_CASE("information in the outcome vanishes as concentration grows") {
  const std::array<double, 4> proportions = {0.6, 0.2, 0.1, 0.1};
  const double h0 = binary_entropy(proportions[1] + proportions[3]);
  double prev = 1e300;
  for (double concentration = 0.5; concentration <= 512.0;
       concentration *= 2.0) {
    const EntropyReport rep = dirichlet_conditional_entropy(
        proportions[0] * concentration, proportions[1] * concentration,
        proportions[2] * concentration, proportions[3] * concentration);
    const double info = h0 - rep.marginal_y0;
    CHECK(info <= prev + 1e-12);
    prev = info;
  }
}

TEST_CASE("concentration solves the requested information ratio") {
  const std::array<double, 4> proportions = {0.6, 0.2, 0.1, 0.1};
  const double a = concentration_for_mi_ratio(proportions, 0.01);
  CHECK(std::fabs(a - 81.2) < 2.0);
  const EntropyReport rep = dirichlet_conditional_entropy(
      proportions[0] * a, proportions[1] * a, proportions[2] * a,
      proportions[3] * a);
  const double h0 = binary_entropy(proportions[1] + proportions[3]);
  CHECK(std::fabs((1.0 - rep.marginal_y0 / h0) - 0.01) <= 1e-4);

  CHECK(concentration_for_mi_ratio(proportions, 0.0) == 1e5);
  CHECK_THROWS_AS(concentration_for_mi_ratio({0.5, 0.5, 0.2, 0.1}, 0.01),
                  std::invalid_argument);
}
