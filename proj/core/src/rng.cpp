#include "thymodyn/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace thymodyn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t replicate_seed(std::uint64_t base, int replicate) {
  return splitmix64(base + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(replicate + 1));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::poisson_small(double mean) {
  // Knuth multiplicative method; mean kept small by the caller so the
  // running product cannot underflow.
  const double limit = std::exp(-mean);
  std::int64_t k = 0;
  double prod = 1.0;
  do {
    prod *= uniform();
    ++k;
  } while (prod > limit);
  return k - 1;
}

std::int64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  // Poisson(a+b) = Poisson(a) + Poisson(b); chunking keeps exp(-mean) > 0.
  constexpr double kChunk = 32.0;
  std::int64_t total = 0;
  while (mean > kChunk) {
    total += poisson_small(kChunk);
    mean -= kChunk;
  }
  return total + poisson_small(mean);
}

std::int64_t Rng::binomial_small(std::int64_t n, double p) {
  // CDF inversion; the caller bounds n so that (1-p)^n stays normal.
  const double odds = p / (1.0 - p);
  double pdf = std::pow(1.0 - p, static_cast<double>(n));
  double cdf = pdf;
  const double u = uniform();
  std::int64_t k = 0;
  while (u > cdf && k < n) {
    ++k;
    pdf *= odds * static_cast<double>(n - k + 1) / static_cast<double>(k);
    cdf += pdf;
  }
  return k;
}

std::int64_t Rng::binomial(std::int64_t n, double p) {
  if (n < 0) throw std::invalid_argument("binomial n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial p must be in [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);

  // Binomial(n1+n2, p) = Binomial(n1, p) + Binomial(n2, p); cap each chunk so
  // (1-p)^chunk >= e^-600.
  const double log_q = std::log1p(-p);
  const auto max_chunk = static_cast<std::int64_t>(600.0 / -log_q) + 1;
  std::int64_t total = 0;
  while (n > max_chunk) {
    total += binomial_small(max_chunk, p);
    n -= max_chunk;
  }
  return total + binomial_small(n, p);
}

}  // namespace thymodyn
