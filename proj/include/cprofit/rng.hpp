#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace cprofit {

/// Counter-seeded xoshiro256++ stream with hierarchical sub-stream
/// derivation. The same (master seed, key path) always produces the same
/// draw sequence, independent of which thread or in which order streams
/// are consumed.
class RngStream {
 public:
  static RngStream root(std::uint64_t master_seed);

  /// Derives an independent child stream. Children of distinct keys (or of
  /// distinct parents) never share state.
  RngStream child(std::uint64_t key) const;
  RngStream child(std::initializer_list<std::uint64_t> keys) const;

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform01();
  /// Uniform on (0, 1), never exactly zero or one.
  double uniform_open();

 private:
  explicit RngStream(std::uint64_t derivation);

  std::uint64_t derivation_;
  std::array<std::uint64_t, 4> state_;
};

/// Standard normal draw (inverse-CDF method, Wichura AS 241).
double sample_standard_normal(RngStream& rng);

/// Gamma(shape, 1). Marsaglia-Tsang for shape >= 1, boost transform below.
double sample_gamma(double shape, RngStream& rng);

/// Bernoulli(p) as 0/1.
int sample_bernoulli(double p, RngStream& rng);

/// Binomial(n, p); p in [0,1], n >= 1.
int sample_binomial(double p, int n, RngStream& rng);

/// Index j with probability probs[j]; probs must sum to 1 within 1e-9.
int sample_categorical(std::span<const double> probs, RngStream& rng);

/// Dirichlet draw on the unit 4-simplex; all m[j] > 0.
std::array<double, 4> sample_dirichlet(const std::array<double, 4>& m,
                                       RngStream& rng);

}  // namespace cprofit
