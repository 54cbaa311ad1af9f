#include "hullcheck/visibility.hpp"

#include "hullcheck/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hullcheck {

VisibilityReport visibility_probe(const PointSet& s, const Vector& p, double eps,
                                  std::int64_t samples, std::uint64_t seed, bool p_inside,
                                  const RunStats* observed) {
  if (p.size() != s.dim()) throw std::invalid_argument("visibility_probe: dimension mismatch");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("visibility_probe: eps must lie in (0,1)");
  if (samples < 1) throw std::invalid_argument("visibility_probe: samples must be positive");

  VisibilityReport report;
  const double radius = s.radius_about(p);
  const double floor = eps * radius;
  SplitMix64 rng(seed);
  double phi = -std::numeric_limits<double>::infinity();

  // Unit directions v_j - p; a vertex equal to p has no direction.
  Matrix dirs(s.dim(), s.count());
  std::vector<bool> has_dir(static_cast<std::size_t>(s.count()));
  for (Index j = 0; j < s.count(); ++j) {
    const Vector d = s.point(j) - p;
    const double norm = d.norm();
    has_dir[static_cast<std::size_t>(j)] = norm > 0.0;
    dirs.col(j) = norm > 0.0 ? Vector(d / norm) : Vector::Zero(s.dim());
  }

  for (std::int64_t k = 0; k < samples; ++k) {
    ++report.samples;
    const Vector x = s.matrix() * dirichlet(rng, s.count());
    const Vector u = x - p;
    const double gap = u.norm();

    if (gap > 0.0) {
      double min_cos = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < s.count(); ++j) {
        if (has_dir[static_cast<std::size_t>(j)]) min_cos = std::min(min_cos, dirs.col(j).dot(u) / gap);
      }
      if (std::isfinite(min_cos)) phi = std::max(phi, min_cos);
    }
    if (gap < floor || gap == 0.0) continue;
    ++report.accepted;

    double best_cos = -2.0;
    bool any = false;
    for (Index j = 0; j < s.count(); ++j) {
      const Vector v = s.point(j);
      if (!pivot_predicate(x, p, v)) continue;
      any = true;
      best_cos = std::max(best_cos, pivot_angle_cosine(x, p, v));
    }
    if (!any) {
      if (p_inside) {
        throw VisibilityInconsistency("sampled iterate has no pivot although p lies in conv(S)");
      }
      ++report.witnesses;
      continue;
    }
    report.theta_star_sampled =
        std::max(report.theta_star_sampled, std::acos(std::clamp(best_cos, -1.0, 1.0)));
  }

  report.nu_sampled = std::sin(report.theta_star_sampled);
  if (std::isfinite(phi)) {
    report.phi_star_sampled = phi;
    report.lambda_star_sampled = std::sqrt(std::max(0.0, 1.0 - phi * phi));
  }
  if (observed) {
    report.nu_observed = observed->observed_nu;
    report.c_observed = observed->observed_c;
  }
  return report;
}

} // namespace hullcheck
