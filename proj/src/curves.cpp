#include "cprofit/curves.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cprofit {

namespace {

void check_row(const RankedRow& row) {
  if ((row.y != 0 && row.y != 1) || (row.t != 0 && row.t != 1))
    throw std::invalid_argument("rows must have binary y and t");
}

double safe_ratio(double num, double den) {
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

RankedDataset RankedDataset::ranked_by_score(std::vector<RankedRow> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RankedRow& a, const RankedRow& b) {
                     return a.score > b.score;
                   });
  return RankedDataset{std::move(rows)};
}

RankedDataset RankedDataset::ranked_by_score(const Eigen::VectorXi& y,
                                             const Eigen::VectorXi& t,
                                             const Eigen::VectorXd& score,
                                             const CostBenefitMatrix& cb) {
  if (y.size() != t.size() || y.size() != score.size())
    throw std::invalid_argument("column lengths must agree");
  std::vector<RankedRow> rows(static_cast<std::size_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i)
    rows[static_cast<std::size_t>(i)] = {y[i], t[i], score[i], cb};
  return ranked_by_score(std::move(rows));
}

Curve Curve::to_per_capita() const {
  if (normalization == Normalization::per_capita) return *this;
  Curve out;
  out.values = values / static_cast<double>(values.size());
  out.normalization = Normalization::per_capita;
  return out;
}

Curve uplift_curve(const RankedDataset& d) {
  if (d.rows.empty()) throw std::invalid_argument("dataset must be nonempty");
  Curve curve;
  curve.values.resize(static_cast<Eigen::Index>(d.rows.size()));
  double n[2] = {0.0, 0.0};
  double r[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    const RankedRow& row = d.rows[i];
    check_row(row);
    n[row.t] += 1.0;
    r[row.t] += row.y;
    const double k = static_cast<double>(i + 1);
    curve.values[static_cast<Eigen::Index>(i)] =
        (safe_ratio(r[0], n[0]) - safe_ratio(r[1], n[1])) * k;
  }
  return curve;
}

Curve empirical_profit_curve(const RankedDataset& d) {
  if (d.rows.empty()) throw std::invalid_argument("dataset must be nonempty");
  Curve curve;
  curve.values.resize(static_cast<Eigen::Index>(d.rows.size()));
  double n[2] = {0.0, 0.0};
  double value_sum[2] = {0.0, 0.0};
  double no_response_sum[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    const RankedRow& row = d.rows[i];
    check_row(row);
    n[row.t] += 1.0;
    value_sum[row.t] += row.cb.value(row.y, row.t);
    no_response_sum[0] += row.cb.value(0, 0);
    no_response_sum[1] += row.cb.value(0, 1);
    const double k = static_cast<double>(i + 1);
    // Treated-arm mean observed value minus control-arm mean observed
    // value, scaled by k. An arm with no representatives in the prefix is
    // imputed the prefix mean of its y=0 cell: the cost-sensitive analog
    // of the uplift curve's zero response rate for a missing arm. With the
    // unitary matrix this makes the curve coincide with uplift_curve at
    // every k, degenerate prefixes included.
    const double term1 =
        n[1] > 0.0 ? value_sum[1] / n[1] : no_response_sum[1] / k;
    const double term0 =
        n[0] > 0.0 ? value_sum[0] / n[0] : no_response_sum[0] / k;
    curve.values[static_cast<Eigen::Index>(i)] = (term1 - term0) * k;
  }
  return curve;
}

double aupc(const Curve& c) {
  if (c.values.size() == 0) throw std::invalid_argument("curve must be nonempty");
  return c.values.mean();
}

}  // namespace cprofit
