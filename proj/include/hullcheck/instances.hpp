#pragma once

#include "hullcheck/random.hpp"

#include <string>
#include <string_view>

namespace hullcheck {

struct Instance {
  PointSet points;
  Vector query;
  std::string family;
  std::uint64_t seed = 0;
  double distance = 0.0; // d(p, conv(S)) when known by construction, else 0
};

/// Standard normal points; p a Dirichlet(1) combination of them.
Instance feasible_instance(Index m, Index n, std::uint64_t seed);

/// Standard normal points; p = x* + s u where x* is the oracle nearest point to
/// a far point and u the outward unit normal there, s uniform in
/// [lo, hi] * R0 with R0 the largest distance of a point from the centroid.
/// The distance of p from the hull is exactly s. Needs the oracle guards.
Instance infeasible_instance(Index m, Index n, std::uint64_t seed, double lo = 0.05, double hi = 1.0);

/// Unit square corners with p = (rho, 1/2), whose largest interior ball has radius rho.
Instance square_ball_instance(double rho);

/// Dispatch by family name: "feasible", "infeasible", "square-ball".
/// For square-ball the i-th instance uses rho = 0.4 * 0.7^i and ignores m, n.
Instance make_instance(std::string_view family, Index m, Index n, std::uint64_t base_seed,
                       std::uint64_t index);

} // namespace hullcheck
