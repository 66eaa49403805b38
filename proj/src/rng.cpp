#include "cprofit/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cprofit {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// Inverse standard normal CDF, algorithm AS 241 (PPND16), |error| < 1e-15 over
// the open unit interval.
double inverse_normal_cdf(double u) {
  const double q = u - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                   6.7265770927008700853e4) *
                      r +
                  4.5921953931549871457e4) *
                     r +
                 1.3731693765509461125e4) *
                    r +
                1.9715909503065514427e3) *
                   r +
               1.3314166789178437745e2) *
                  r +
              3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) *
                 r +
             2.1213794301586595867e4) *
                r +
            5.3941960214247511077e3) *
               r +
           6.8718700749205790830e2) *
              r +
          4.2313330701600911252e1) *
             r +
         1.0);
    return num / den;
  }
  double r = (q < 0.0) ? u : 1.0 - u;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e0) *
                r +
            3.64784832476320460504e0) *
               r +
           5.76949722146069140550e0) *
              r +
          4.63033784615654529590e0) *
             r +
         1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e0) *
              r +
          2.05319162663775882187e0) *
             r +
         1.0);
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e0) *
              r +
          5.46378491116411436990e0) *
             r +
         6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) *
                  r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
    value = num / den;
  }
  return (q < 0.0) ? -value : value;
}

}  // namespace

RngStream::RngStream(std::uint64_t derivation) : derivation_(derivation) {
  std::uint64_t s = derivation;
  for (auto& word : state_) {
    s = splitmix64(s);
    word = s;
  }
}

RngStream RngStream::root(std::uint64_t master_seed) {
  return RngStream(splitmix64(master_seed ^ kGolden));
}

RngStream RngStream::child(std::uint64_t key) const {
  return RngStream(splitmix64(derivation_ ^ splitmix64(key)));
}

RngStream RngStream::child(std::initializer_list<std::uint64_t> keys) const {
  RngStream stream = *this;
  for (std::uint64_t key : keys) stream = stream.child(key);
  return stream;
}

std::uint64_t RngStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double sample_standard_normal(RngStream& rng) {
  return inverse_normal_cdf(rng.uniform_open());
}

double sample_gamma(double shape, RngStream& rng) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be > 0");
  if (shape < 1.0) {
    const double u = rng.uniform_open();
    return sample_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = sample_standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

int sample_bernoulli(double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("bernoulli p must be in [0,1]");
  return rng.uniform01() < p ? 1 : 0;
}

int sample_binomial(double p, int n, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial p must be in [0,1]");
  if (n < 1) throw std::invalid_argument("binomial n must be >= 1");
  if (p == 0.0) return 0;
  if (p == 1.0) return n;
  if (n <= 256) {
    int count = 0;
    for (int i = 0; i < n; ++i) count += rng.uniform01() < p ? 1 : 0;
    return count;
  }
  // CDF inversion with the pmf recurrence; adequate for occasional large n.
  const double q = 1.0 - p;
  double pmf = std::pow(q, n);
  double cdf = pmf;
  const double u = rng.uniform01();
  int k = 0;
  while (u > cdf && k < n) {
    ++k;
    pmf *= (static_cast<double>(n - k + 1) / k) * (p / q);
    cdf += pmf;
  }
  return k;
}

int sample_categorical(std::span<const double> probs, RngStream& rng) {
  if (probs.empty()) throw std::invalid_argument("categorical needs >= 1 bin");
  double total = 0.0;
  for (double w : probs) {
    if (!(w >= 0.0)) throw std::invalid_argument("categorical prob < 0");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::invalid_argument("categorical probs must sum to 1");
  const double u = rng.uniform01() * total;
  double cum = 0.0;
  int last_positive = 0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] > 0.0) last_positive = static_cast<int>(j);
    cum += probs[j];
    if (u < cum) return static_cast<int>(j);
  }
  return last_positive;
}

std::array<double, 4> sample_dirichlet(const std::array<double, 4>& m,
                                       RngStream& rng) {
  std::array<double, 4> draw{};
  double total = 0.0;
  for (int j = 0; j < 4; ++j) {
    if (!(m[j] > 0.0))
      throw std::invalid_argument("dirichlet parameters must be > 0");
    draw[j] = sample_gamma(m[j], rng);
    total += draw[j];
  }
  for (double& v : draw) v /= total;
  return draw;
}

}  // namespace cprofit
