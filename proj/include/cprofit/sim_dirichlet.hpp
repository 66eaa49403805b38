#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cprofit/profit.hpp"
#include "cprofit/rng.hpp"

namespace cprofit {

/// Joint probabilities of the four potential-outcome pairs
/// ((y0,y1) = (0,0), (1,0), (0,1), (1,1)).
struct PotentialJoint {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  double s0() const { return beta + delta; }
  double s1() const { return gamma + delta; }
};

struct DirichletSimConfig {
  std::array<double, 4> proportions = {0.6, 0.2, 0.1, 0.1};
  /// Exactly one of these drives the Dirichlet concentration: an explicit
  /// A, or a y0 information-ratio target inverted through the analytic
  /// conditional entropy (0 maps to the no-information stand-in A = 1e5).
  std::optional<double> concentration;
  std::optional<double> mi_ratio_target = 0.01;
  int n_population = 10000;
  int n_u = 1;
  int n_p = 1;
  CostBenefitMatrix cb = CostBenefitMatrix::unitary();
  int repetitions = 50;
  std::uint64_t master_seed = 20240904;
  double p_treat = 0.5;
  /// AUPC difference below which two approaches count as tied, both per
  /// repetition and between per-cell means.
  double tie_epsilon = 1e-3;

  void validate() const;
  double resolve_concentration() const;
};

struct SampledIndividual {
  PotentialJoint mu;
  double s0 = 0.0;
  double s1 = 0.0;
  int y0 = 0;
  int y1 = 0;
};

/// One unit of the sampling process: a Dirichlet draw of mu, its implied
/// conditionals, and one categorical draw of the potential outcomes.
SampledIndividual sample_individual(const std::array<double, 4>& m,
                                    RngStream& rng);

struct EmulatedScores {
  double score_u = 0.0;
  double score_p = 0.0;
};

/// Estimator emulation: score_p ~ Bin(s0, n_p)/n_p and score_u the
/// difference of two Bin(., n_u)/n_u draws, so the variances are set by
/// n_p and n_u alone.
EmulatedScores emulate_scores(double s0, double s1, int n_u, int n_p,
                              RngStream& rng);

enum class Winner { uplift, predictive, tie };

struct ComparisonResult {
  double aupc_u = 0.0;
  double aupc_p = 0.0;
  Winner winner = Winner::tie;
};

/// One repetition at the given estimator sizes: sample a population,
/// randomize t, evaluate both emulated scores by the profit curve under
/// cfg.cb, and compare per-capita AUPC with the tie band.
ComparisonResult run_comparison(const DirichletSimConfig& cfg, double concentration,
                                int n_u, int n_p, RngStream& rng);

struct GridCell {
  int n_u = 0;
  int n_p = 0;
  double win_rate_uplift = 0.0;      // per-repetition wins / repetitions
  double win_rate_predictive = 0.0;
  double tie_rate = 0.0;
  double mean_aupc_u = 0.0;
  double mean_aupc_p = 0.0;
  Winner winner_by_mean = Winner::tie;
};

/// Repetition-averaged comparison per (n_u, n_p) cell. Cells run in
/// parallel on streams derived from (cell, repetition), so the grid is
/// reproducible regardless of scheduling.
std::vector<GridCell> run_variance_grid(const DirichletSimConfig& cfg,
                                        const std::vector<int>& n_u_range,
                                        const std::vector<int>& n_p_range,
                                        int threads = 0);

struct SweepRow {
  double s0 = 0.0;
  double s1 = 0.0;
  double uplift_win_ratio = 0.0;  // fraction of grid cells won by mean AUPC
};

/// Outcome-distribution sweep: for each proportions vector, run the
/// variance grid and record the fraction of cells whose mean AUPC favors
/// the uplift approach.
std::vector<SweepRow> run_outcome_sweep(
    const DirichletSimConfig& base_cfg,
    const std::vector<std::array<double, 4>>& mu_grid,
    const std::vector<int>& n_u_range, const std::vector<int>& n_p_range,
    int threads = 0);

}  // namespace cprofit
