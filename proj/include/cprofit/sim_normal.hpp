#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "cprofit/logistic.hpp"
#include "cprofit/rng.hpp"

namespace cprofit {

/// Linear-threshold potential-outcome generator over standard normal
/// features, and the uplift-vs-predictive experiment run on it.
struct NormalSimConfig {
  int n_features = 10;
  double p_treat = 0.04;
  int n_train = 1000;
  int n_test = 10000;
  std::vector<double> scale_grid = {0.01, 0.1, 1.0, 10.0};
  double eta0 = 1.12;
  double eta1 = 0.87;
  double c_reg = 10.0;
  int repetitions = 100;
  std::uint64_t master_seed = 20240904;
  bool report_mi_y1 = false;

  void validate() const;
};

/// Coefficient draws for one repetition: lambda0 ~ N(1.2c, c^2) and
/// lambda1 ~ N(c, c^2) per entry.
std::pair<Eigen::VectorXd, Eigen::VectorXd> draw_coefficients(
    const NormalSimConfig& cfg, double scale_c, RngStream& rng);

struct GeneratedDataset {
  LabeledDataset data;
  Eigen::VectorXd true_s0;
  Eigen::VectorXd true_s1;
};

/// x iid standard normal; y_t = 1[lambda_t . x + eps >= eta_t] with one
/// shared eps per unit; t ~ Bernoulli(p_treat); y is the observed arm's
/// outcome. True conditionals come from the normal CDF.
GeneratedDataset generate_dataset(const NormalSimConfig& cfg,
                                  const Eigen::VectorXd& lambda0,
                                  const Eigen::VectorXd& lambda1, int size,
                                  RngStream& rng);

struct NormalRepRow {
  int rep = 0;
  double scale_c = 0.0;
  double mi_ratio = 0.0;     // I(x; y0) / H(y0) on the test set
  double mi_ratio_y1 = 0.0;  // populated when report_mi_y1 is set
  double aupc_uplift = 0.0;
  double aupc_predictive = 0.0;
  double measured_s0 = 0.0;
  double measured_s1 = 0.0;
};

/// Full experiment: for every scale in scale_grid and every repetition,
/// draw coefficients, generate train/test, fit both approaches, evaluate
/// AUPC under the unitary cost-benefit matrix. Repetitions run in
/// parallel on derived sub-streams, so the row order and contents do not
/// depend on scheduling.
std::vector<NormalRepRow> run_normal_experiment(const NormalSimConfig& cfg,
                                                int threads = 0);

}  // namespace cprofit
