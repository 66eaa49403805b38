#include "cprofit/special.hpp"

#include <cmath>
#include <stdexcept>

namespace cprofit {

double normal_cdf(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("normal_cdf: non-finite z");
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("digamma: x must be > 0");
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi(x) ~ ln x - 1/(2x) - sum B_2n / (2n x^{2n})
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0))))));
  return result + std::log(x) - 0.5 * inv - series;
}

}  // namespace cprofit
