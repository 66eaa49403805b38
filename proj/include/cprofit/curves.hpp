#pragma once

#include <Eigen/Core>
#include <vector>

#include "cprofit/profit.hpp"

namespace cprofit {

struct RankedRow {
  int y = 0;
  int t = 0;
  double score = 0.0;
  CostBenefitMatrix cb;
};

/// Test rows sorted by score descending, ties broken by input index.
struct RankedDataset {
  std::vector<RankedRow> rows;

  /// Sorts a copy of the rows into ranking order.
  static RankedDataset ranked_by_score(std::vector<RankedRow> rows);

  /// Column-wise constructor; cb applies to every row.
  static RankedDataset ranked_by_score(const Eigen::VectorXi& y,
                                       const Eigen::VectorXi& t,
                                       const Eigen::VectorXd& score,
                                       const CostBenefitMatrix& cb);
};

enum class Normalization { raw, per_capita };

/// Evaluation curve over prefix sizes k = 1..N.
struct Curve {
  Eigen::VectorXd values;  // values[k-1] is the curve at prefix size k
  Normalization normalization = Normalization::raw;

  Curve to_per_capita() const;
};

/// Prefix response-rate difference between arms, scaled by k. A zero
/// denominator contributes 0.
Curve uplift_curve(const RankedDataset& d);

/// Cost-sensitive curve: the per-arm prefix means of the observed-cell
/// cost-benefit value, treated minus control, scaled by k. Each row
/// contributes only the CB entry of its observed (y, t); an arm missing
/// from the prefix is imputed the prefix mean of its y=0 cell. Under the
/// unitary matrix this coincides with uplift_curve at every k.
Curve empirical_profit_curve(const RankedDataset& d);

/// Mean of the curve values (the area summary on the curve's own scale).
double aupc(const Curve& c);

}  // namespace cprofit
