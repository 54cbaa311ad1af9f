#pragma once

#include "hullcheck/lp.hpp"
#include "hullcheck/random.hpp"

namespace testing {

using hullcheck::Index;
using hullcheck::LpInstance;
using hullcheck::Matrix;
using hullcheck::SplitMix64;
using hullcheck::Vector;

// Columns with u^T a_i >= 0.2 for a random unit u, so 0 is outside conv(A)
// and {x >= 0 : Ax = 0} = {0}.
inline Matrix halfspace_columns(SplitMix64& rng, Index m, Index n, Vector& u) {
  u = hullcheck::unit_vector(rng, m);
  Matrix A(m, n);
  for (Index j = 0; j < n; ++j) {
    Vector a = hullcheck::normal_vector(rng, m);
    const double along = u.dot(a);
    a += (rng.uniform(0.2, 1.5) - along) * u;
    A.col(j) = a;
  }
  return A;
}

// Feasible with no recession directions: b = A x for x >= 0 with |x|_1 in [0.5, 3].
inline LpInstance no_recession_feasible(Index m, Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vector u;
  LpInstance lp{halfspace_columns(rng, m, n, u), Vector()};
  const Vector x = rng.uniform(0.5, 3.0) * hullcheck::dirichlet(rng, n);
  lp.b = lp.A * x;
  return lp;
}

// Feasible with a solution of 1-norm at most fraction * M.
inline LpInstance bounded_feasible(Index m, Index n, double M, double fraction, std::uint64_t seed) {
  SplitMix64 rng(seed);
  LpInstance lp{Matrix(m, n), Vector()};
  for (Index j = 0; j < n; ++j) lp.A.col(j) = hullcheck::normal_vector(rng, m);
  const Vector x = rng.uniform(0.2, fraction) * M * hullcheck::dirichlet(rng, n);
  lp.b = lp.A * x;
  return lp;
}

// Infeasible for every bound: u^T a_i > 0 while u^T b < 0.
inline LpInstance halfspace_infeasible(Index m, Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vector u;
  LpInstance lp{halfspace_columns(rng, m, n, u), Vector()};
  Vector b = hullcheck::normal_vector(rng, m);
  b += (-rng.uniform(0.2, 1.0) - u.dot(b)) * u;
  lp.b = b;
  return lp;
}

} // namespace testing
