#include "cprofit/sim_dirichlet.hpp"

#include <cmath>
#include <stdexcept>

#include "cprofit/curves.hpp"
#include "cprofit/information.hpp"
#include "cprofit/parallel.hpp"

namespace cprofit {

void DirichletSimConfig::validate() const {
  double sum = 0.0;
  for (double p : proportions) {
    if (!(p > 0.0))
      throw std::invalid_argument("proportions must be positive");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("proportions must sum to 1");
  if (!concentration.has_value() && !mi_ratio_target.has_value())
    throw std::invalid_argument(
        "either concentration or mi_ratio_target is required");
  if (concentration.has_value() && !(*concentration > 0.0))
    throw std::invalid_argument("concentration must be > 0");
  if (mi_ratio_target.has_value() &&
      !(*mi_ratio_target >= 0.0 && *mi_ratio_target < 1.0))
    throw std::invalid_argument("mi_ratio_target must lie in [0,1)");
  if (n_population < 1) throw std::invalid_argument("n_population must be >= 1");
  if (n_u < 1 || n_p < 1) throw std::invalid_argument("n_u and n_p must be >= 1");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (!(p_treat > 0.0 && p_treat < 1.0))
    throw std::invalid_argument("p_treat must lie in (0,1)");
  if (!(tie_epsilon >= 0.0))
    throw std::invalid_argument("tie_epsilon must be >= 0");
}

double DirichletSimConfig::resolve_concentration() const {
  if (concentration.has_value()) return *concentration;
  return concentration_for_mi_ratio(proportions, *mi_ratio_target);
}

SampledIndividual sample_individual(const std::array<double, 4>& m,
                                    RngStream& rng) {
  SampledIndividual unit;
  const std::array<double, 4> mu = sample_dirichlet(m, rng);
  unit.mu = {mu[0], mu[1], mu[2], mu[3]};
  unit.s0 = unit.mu.s0();
  unit.s1 = unit.mu.s1();
  switch (sample_categorical(mu, rng)) {
    case 0: unit.y0 = 0; unit.y1 = 0; break;
    case 1: unit.y0 = 1; unit.y1 = 0; break;
    case 2: unit.y0 = 0; unit.y1 = 1; break;
    default: unit.y0 = 1; unit.y1 = 1; break;
  }
  return unit;
}

EmulatedScores emulate_scores(double s0, double s1, int n_u, int n_p,
                              RngStream& rng) {
  if (!(s0 >= 0.0 && s0 <= 1.0 && s1 >= 0.0 && s1 <= 1.0))
    throw std::invalid_argument("conditional probabilities must be in [0,1]");
  if (n_u < 1 || n_p < 1)
    throw std::invalid_argument("estimator sizes must be >= 1");
  EmulatedScores scores;
  scores.score_u =
      (static_cast<double>(sample_binomial(s0, n_u, rng)) -
       static_cast<double>(sample_binomial(s1, n_u, rng))) /
      static_cast<double>(n_u);
  scores.score_p = static_cast<double>(sample_binomial(s0, n_p, rng)) /
                   static_cast<double>(n_p);
  return scores;
}

namespace {

Winner winner_with_band(double aupc_u, double aupc_p, double epsilon) {
  const double diff = aupc_u - aupc_p;
  if (std::fabs(diff) < epsilon) return Winner::tie;
  return diff > 0.0 ? Winner::uplift : Winner::predictive;
}

}  // namespace

ComparisonResult run_comparison(const DirichletSimConfig& cfg,
                                double concentration, int n_u, int n_p,
                                RngStream& rng) {
  const std::array<double, 4> m = {
      cfg.proportions[0] * concentration, cfg.proportions[1] * concentration,
      cfg.proportions[2] * concentration, cfg.proportions[3] * concentration};
  const int n = cfg.n_population;
  std::vector<RankedRow> rows_u(static_cast<std::size_t>(n));
  std::vector<RankedRow> rows_p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const SampledIndividual unit = sample_individual(m, rng);
    const EmulatedScores scores =
        emulate_scores(unit.s0, unit.s1, n_u, n_p, rng);
    const int t = sample_bernoulli(cfg.p_treat, rng);
    const int y = t == 0 ? unit.y0 : unit.y1;
    rows_u[static_cast<std::size_t>(i)] = {y, t, scores.score_u, cfg.cb};
    rows_p[static_cast<std::size_t>(i)] = {y, t, scores.score_p, cfg.cb};
  }
  ComparisonResult result;
  result.aupc_u = aupc(
      empirical_profit_curve(RankedDataset::ranked_by_score(std::move(rows_u)))
          .to_per_capita());
  result.aupc_p = aupc(
      empirical_profit_curve(RankedDataset::ranked_by_score(std::move(rows_p)))
          .to_per_capita());
  result.winner = winner_with_band(result.aupc_u, result.aupc_p,
                                   cfg.tie_epsilon);
  return result;
}

std::vector<GridCell> run_variance_grid(const DirichletSimConfig& cfg,
                                        const std::vector<int>& n_u_range,
                                        const std::vector<int>& n_p_range,
                                        int threads) {
  cfg.validate();
  if (n_u_range.empty() || n_p_range.empty())
    throw std::invalid_argument("estimator size ranges must be nonempty");
  const double concentration = cfg.resolve_concentration();
  const int n_cells =
      static_cast<int>(n_u_range.size() * n_p_range.size());
  const int n_tasks = n_cells * cfg.repetitions;
  std::vector<ComparisonResult> results(static_cast<std::size_t>(n_tasks));
  const RngStream root = RngStream::root(cfg.master_seed);

  run_parallel(n_tasks, threads, [&](int task) {
    const int cell = task / cfg.repetitions;
    const int rep = task % cfg.repetitions;
    const int n_u =
        n_u_range[static_cast<std::size_t>(cell) / n_p_range.size()];
    const int n_p =
        n_p_range[static_cast<std::size_t>(cell) % n_p_range.size()];
    RngStream stream =
        root.child({static_cast<std::uint64_t>(n_u),
                    static_cast<std::uint64_t>(n_p),
                    static_cast<std::uint64_t>(rep)});
    results[static_cast<std::size_t>(task)] =
        run_comparison(cfg, concentration, n_u, n_p, stream);
  });

  std::vector<GridCell> cells(static_cast<std::size_t>(n_cells));
  for (int cell = 0; cell < n_cells; ++cell) {
    GridCell& out = cells[static_cast<std::size_t>(cell)];
    out.n_u = n_u_range[static_cast<std::size_t>(cell) / n_p_range.size()];
    out.n_p = n_p_range[static_cast<std::size_t>(cell) % n_p_range.size()];
    int wins_u = 0;
    int wins_p = 0;
    int ties = 0;
    double sum_u = 0.0;
    double sum_p = 0.0;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      const ComparisonResult& r =
          results[static_cast<std::size_t>(cell * cfg.repetitions + rep)];
      sum_u += r.aupc_u;
      sum_p += r.aupc_p;
      switch (r.winner) {
        case Winner::uplift: ++wins_u; break;
        case Winner::predictive: ++wins_p; break;
        case Winner::tie: ++ties; break;
      }
    }
    const double reps = static_cast<double>(cfg.repetitions);
    out.win_rate_uplift = wins_u / reps;
    out.win_rate_predictive = wins_p / reps;
    out.tie_rate = ties / reps;
    out.mean_aupc_u = sum_u / reps;
    out.mean_aupc_p = sum_p / reps;
    out.winner_by_mean =
        winner_with_band(out.mean_aupc_u, out.mean_aupc_p, cfg.tie_epsilon);
  }
  return cells;
}

std::vector<SweepRow> run_outcome_sweep(
    const DirichletSimConfig& base_cfg,
    const std::vector<std::array<double, 4>>& mu_grid,
    const std::vector<int>& n_u_range, const std::vector<int>& n_p_range,
    int threads) {
  if (mu_grid.empty()) throw std::invalid_argument("mu_grid must be nonempty");
  std::vector<SweepRow> rows;
  rows.reserve(mu_grid.size());
  std::uint64_t point = 0;
  for (const std::array<double, 4>& proportions : mu_grid) {
    DirichletSimConfig cfg = base_cfg;
    cfg.proportions = proportions;
    cfg.master_seed = RngStream::root(base_cfg.master_seed)
                          .child(point)
                          .next_u64();
    cfg.validate();
    const std::vector<GridCell> cells =
        run_variance_grid(cfg, n_u_range, n_p_range, threads);
    int uplift_cells = 0;
    for (const GridCell& cell : cells)
      if (cell.winner_by_mean == Winner::uplift) ++uplift_cells;
    SweepRow row;
    row.s0 = proportions[1] + proportions[3];
    row.s1 = proportions[2] + proportions[3];
    row.uplift_win_ratio =
        static_cast<double>(uplift_cells) / static_cast<double>(cells.size());
    rows.push_back(row);
    ++point;
  }
  return rows;
}

}  // namespace cprofit
