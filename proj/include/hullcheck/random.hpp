#pragma once

// SplitMix64 and the derived draws used by the instance generators. Every
// draw is defined bit-for-bit so other languages can reproduce instances:
//   next():    state += 0x9E3779B97F4A7C15; z = state;
//              z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//              z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
//   uniform(): (next() >> 11) * 2^-53, in [0, 1)
//   normal():  u1 = 1 - uniform(), u2 = uniform(); sqrt(-2 ln u1) cos(2 pi u2)
//   dirichlet(n): e_i = -ln(1 - uniform()), normalised by their sum

#include "hullcheck/geometry.hpp"

#include <cstdint>

namespace hullcheck {

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

private:
  std::uint64_t state_;
};

Vector normal_vector(SplitMix64& rng, Index m);
Vector unit_vector(SplitMix64& rng, Index m);
/// Dirichlet(1, ..., 1), i.e. uniform on the simplex.
Vector dirichlet(SplitMix64& rng, Index n);

/// Seed for the i-th instance derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

} // namespace hullcheck
