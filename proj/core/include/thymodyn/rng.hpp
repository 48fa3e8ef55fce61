#pragma once

#include <cstdint>
#include <random>

namespace thymodyn {

/// SplitMix64 mix step; used to derive independent per-replicate seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for replicate `replicate` of an ensemble keyed by `base`.
std::uint64_t replicate_seed(std::uint64_t base, int replicate);

/// mt19937_64 wrapper with exact, library-independent integer samplers.
/// std::poisson_distribution / std::binomial_distribution are
/// implementation-defined, which would break bit-exact ensemble
/// reproducibility across standard libraries; these stay fixed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform();

  /// Exact Poisson(mean) via multiplicative (Knuth) sampling, chunked so it
  /// never underflows. Cost O(mean).
  std::int64_t poisson(double mean);

  /// Exact Binomial(n, p) via CDF inversion, chunked against underflow.
  /// Expected cost O(n*p).
  std::int64_t binomial(std::int64_t n, double p);

 private:
  std::int64_t poisson_small(double mean);
  std::int64_t binomial_small(std::int64_t n, double p);

  std::mt19937_64 engine_;
};

}  // namespace thymodyn
