#include "hullcheck/random.hpp"

#include <cmath>
#include <numbers>

namespace hullcheck {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1p-53; }

double SplitMix64::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

Vector normal_vector(SplitMix64& rng, Index m) {
  Vector v(m);
  for (Index i = 0; i < m; ++i) v(i) = rng.normal();
  return v;
}

Vector unit_vector(SplitMix64& rng, Index m) {
  for (;;) {
    Vector v = normal_vector(rng, m);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

Vector dirichlet(SplitMix64& rng, Index n) {
  Vector w(n);
  for (Index i = 0; i < n; ++i) w(i) = -std::log(1.0 - rng.uniform());
  const double total = w.sum();
  if (!(total > 0.0)) return Vector::Constant(n, 1.0 / static_cast<double>(n));
  return w / total;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 mix(base ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return mix.next();
}

} // namespace hullcheck
