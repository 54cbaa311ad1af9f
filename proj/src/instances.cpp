#include "hullcheck/instances.hpp"

#include "hullcheck/baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace hullcheck {

namespace {

Matrix gaussian_columns(SplitMix64& rng, Index m, Index n) {
  Matrix cols(m, n);
  for (Index j = 0; j < n; ++j) cols.col(j) = normal_vector(rng, m);
  return cols;
}

} // namespace

Instance feasible_instance(Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("feasible_instance: m and n must be positive");
  SplitMix64 rng(seed);
  PointSet s(gaussian_columns(rng, m, n));
  const Vector w = dirichlet(rng, n);
  Vector p = s.matrix() * w;
  return {std::move(s), std::move(p), "feasible", seed, 0.0};
}

Instance infeasible_instance(Index m, Index n, std::uint64_t seed, double lo, double hi) {
  if (m < 1 || n < 1) throw std::invalid_argument("infeasible_instance: m and n must be positive");
  if (!(0.0 < lo && lo <= hi)) throw std::invalid_argument("infeasible_instance: need 0 < lo <= hi");
  SplitMix64 rng(seed);
  PointSet s(gaussian_columns(rng, m, n));
  const Vector centroid = s.matrix().rowwise().mean();
  const double r0 = std::max(s.radius_about(centroid), 1e-6);

  const Vector far = centroid + 10.0 * (r0 + 1.0) * unit_vector(rng, m);
  const NearestPoint nearest = oracle_nearest(s, far);
  const Vector normal = (far - nearest.point).normalized();
  const double shift = rng.uniform(lo, hi) * r0;
  Vector p = nearest.point + shift * normal;
  return {std::move(s), std::move(p), "infeasible", seed, shift};
}

Instance square_ball_instance(double rho) {
  if (!(rho > 0.0 && rho <= 0.5)) throw std::invalid_argument("square_ball_instance: rho in (0, 0.5]");
  PointSet s = PointSet::from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  Vector p(2);
  p << rho, 0.5;
  return {std::move(s), std::move(p), "square-ball", 0, 0.0};
}

Instance make_instance(std::string_view family, Index m, Index n, std::uint64_t base_seed,
                       std::uint64_t index) {
  const std::uint64_t seed = derive_seed(base_seed, index);
  if (family == "feasible") return feasible_instance(m, n, seed);
  if (family == "infeasible") return infeasible_instance(m, n, seed);
  if (family == "square-ball") {
    Instance inst = square_ball_instance(0.4 * std::pow(0.7, static_cast<double>(index)));
    inst.seed = seed;
    return inst;
  }
  throw std::invalid_argument("unknown instance family '" + std::string(family) + "'");
}

} // namespace hullcheck
