#include "hullcheck/geometry.hpp"

#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hullcheck {

namespace {

void require_same_dim(const Vector& u, const Vector& v, const char* what) {
  if (u.size() != v.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(u.size()) + " vs " + std::to_string(v.size()) +
                                ")");
  }
}

} // namespace

PointSet::PointSet(Matrix columns) : columns_(std::move(columns)) {
  if (columns_.rows() < 1 || columns_.cols() < 1) {
    throw std::invalid_argument("PointSet: need at least one point of positive dimension");
  }
  if (!columns_.allFinite()) {
    throw std::invalid_argument("PointSet: non-finite coordinate");
  }
}

PointSet PointSet::from_points(const std::vector<std::vector<double>>& points) {
  if (points.empty() || points.front().empty()) {
    throw std::invalid_argument("PointSet: need at least one point of positive dimension");
  }
  const auto dim = static_cast<Index>(points.front().size());
  Matrix m(dim, static_cast<Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (static_cast<Index>(points[j].size()) != dim) {
      throw std::invalid_argument("PointSet: point " + std::to_string(j) + " has dimension " +
                                  std::to_string(points[j].size()) + ", expected " +
                                  std::to_string(dim));
    }
    for (Index i = 0; i < dim; ++i) {
      m(i, static_cast<Index>(j)) = points[j][static_cast<std::size_t>(i)];
    }
  }
  return PointSet(std::move(m));
}

double PointSet::radius_about(const Vector& p) const {
  require_same_dim(p, columns_.col(0), "radius_about");
  return std::sqrt((columns_.colwise() - p).colwise().squaredNorm().maxCoeff());
}

Index PointSet::nearest_index(const Vector& p) const {
  require_same_dim(p, columns_.col(0), "nearest_index");
  Index best = 0;
  double best_d2 = squared_distance(columns_.col(0), p);
  for (Index i = 1; i < count(); ++i) {
    const double d2 = squared_distance(columns_.col(i), p);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

std::string_view to_string(PivotRule rule) {
  switch (rule) {
  case PivotRule::FirstIndex: return "first";
  case PivotRule::BestAngle: return "best";
  case PivotRule::StrictFirst: return "strict-first";
  case PivotRule::StrictBest: return "strict-best";
  case PivotRule::StrategyI: return "strategy-i";
  case PivotRule::StrategyIV: return "strategy-iv";
  }
  return "unknown";
}

PivotRule parse_pivot_rule(std::string_view name) {
  for (auto rule : {PivotRule::FirstIndex, PivotRule::BestAngle, PivotRule::StrictFirst,
                    PivotRule::StrictBest, PivotRule::StrategyI, PivotRule::StrategyIV}) {
    if (to_string(rule) == name) return rule;
  }
  throw std::invalid_argument("unknown pivot rule '" + std::string(name) + "'");
}

void Tolerances::validate(Index point_count) const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
  if (refresh_period < 1) throw std::invalid_argument("refresh_period must be positive");
  if (t_inner < 1) throw std::invalid_argument("t_inner must be positive");
  if (k_faces < 2) throw std::invalid_argument("k_faces must be at least 2");
  if (point_count >= 0 && k_faces > point_count && point_count >= 2) {
    throw std::invalid_argument("k_faces must not exceed the number of points");
  }
}

Iterate Iterate::at_vertex(const PointSet& s, const Vector& p, Index j) {
  Iterate it;
  it.coeffs = Vector::Zero(s.count());
  it.coeffs(j) = 1.0;
  it.point = s.point(j);
  it.gap = std::sqrt(squared_distance(it.point, p));
  return it;
}

Iterate Iterate::from_coeffs(const PointSet& s, const Vector& p, Vector coeffs) {
  if (coeffs.size() != s.count()) {
    throw std::invalid_argument("Iterate: coefficient vector length does not match point count");
  }
  Iterate it;
  it.coeffs = std::move(coeffs);
  it.refresh(s, p);
  return it;
}

void Iterate::refresh(const PointSet& s, const Vector& p) {
  coeffs = coeffs.cwiseMax(0.0);
  const double total = coeffs.sum();
  if (!(total > 0.0)) throw std::invalid_argument("Iterate: coefficients sum to zero");
  coeffs /= total;
  point = s.matrix() * coeffs;
  gap = std::sqrt(squared_distance(point, p));
}

double squared_distance(const Vector& u, const Vector& v) {
  require_same_dim(u, v, "squared_distance");
  double sum = 0.0;
  for (Index i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    sum += d * d;
  }
  return sum;
}

bool pivot_predicate(const Vector& iterate_point, const Vector& p, const Vector& v) {
  require_same_dim(iterate_point, p, "pivot_predicate");
  require_same_dim(v, p, "pivot_predicate");
  return kernels::pivot_margin(iterate_point.data(), p.data(), v.data(), p.size()) >= 0.0;
}

bool strict_pivot_predicate(const Vector& iterate_point, const Vector& p, const Vector& v) {
  require_same_dim(iterate_point, p, "strict_pivot_predicate");
  require_same_dim(v, p, "strict_pivot_predicate");
  return kernels::centered_dot(iterate_point.data(), v.data(), p.data(), p.size()) <= 0.0;
}

SegmentProjection project_to_segment(const Vector& p, const Vector& a, const Vector& b) {
  require_same_dim(p, a, "project_to_segment");
  require_same_dim(a, b, "project_to_segment");
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return {a, 0.0};
  const double alpha = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return {(1.0 - alpha) * a + alpha * b, alpha};
}

TriangleProjection project_to_triangle(const Vector& p, const Vector& a, const Vector& b,
                                       const Vector& c) {
  require_same_dim(p, a, "project_to_triangle");
  require_same_dim(a, b, "project_to_triangle");
  require_same_dim(a, c, "project_to_triangle");

  const Vector e1 = b - a;
  const Vector e2 = c - a;
  const Vector w = p - a;
  const double g11 = e1.squaredNorm();
  const double g12 = e1.dot(e2);
  const double g22 = e2.squaredNorm();
  const double det = g11 * g22 - g12 * g12;

  // Unconstrained minimiser over the affine hull, kept only if it is feasible.
  if (det > 1e-14 * g11 * g22 && det > 0.0) {
    const double r1 = e1.dot(w);
    const double r2 = e2.dot(w);
    const double s = (g22 * r1 - g12 * r2) / det;
    const double t = (g11 * r2 - g12 * r1) / det;
    if (s >= 0.0 && t >= 0.0 && s + t <= 1.0) {
      TriangleProjection out;
      out.barycentric = {1.0 - s - t, s, t};
      out.point = out.barycentric[0] * a + s * b + t * c;
      return out;
    }
  }

  // Otherwise the minimum sits on one of the sides.
  const auto ab = project_to_segment(p, a, b);
  const auto bc = project_to_segment(p, b, c);
  const auto ca = project_to_segment(p, c, a);
  const double dab = squared_distance(ab.point, p);
  const double dbc = squared_distance(bc.point, p);
  const double dca = squared_distance(ca.point, p);

  TriangleProjection out;
  if (dab <= dbc && dab <= dca) {
    out.point = ab.point;
    out.barycentric = {1.0 - ab.alpha, ab.alpha, 0.0};
  } else if (dbc <= dca) {
    out.point = bc.point;
    out.barycentric = {0.0, 1.0 - bc.alpha, bc.alpha};
  } else {
    out.point = ca.point;
    out.barycentric = {ca.alpha, 0.0, 1.0 - ca.alpha};
  }
  return out;
}

} // namespace hullcheck
