#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace hullcheck {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Finite point set stored column-wise (dim x count). Immutable after
/// construction, so a single instance can be shared by concurrent solves.
class PointSet {
public:
  /// Throws std::invalid_argument on an empty set or non-finite entries.
  explicit PointSet(Matrix columns);

  /// Builds from row-major point lists (one inner vector per point).
  static PointSet from_points(const std::vector<std::vector<double>>& points);

  Index dim() const { return columns_.rows(); }
  Index count() const { return columns_.cols(); }

  auto point(Index i) const { return columns_.col(i); }
  const Matrix& matrix() const { return columns_; }

  /// max_i d(p, v_i)
  double radius_about(const Vector& p) const;
  /// argmin_i d(p, v_i), lowest index on ties.
  Index nearest_index(const Vector& p) const;

private:
  Matrix columns_;
};

enum class PivotRule : std::uint8_t {
  FirstIndex,
  BestAngle,
  StrictFirst,
  StrictBest,
  StrategyI,
  StrategyIV,
};

std::string_view to_string(PivotRule rule);
/// Throws std::invalid_argument for unknown names.
PivotRule parse_pivot_rule(std::string_view name);

struct Tolerances {
  double eps = 1e-3;
  std::int64_t max_iters = 10'000'000;
  PivotRule pivot_rule = PivotRule::FirstIndex;
  std::int64_t refresh_period = 1000;
  int t_inner = 4;
  int k_faces = 3;

  /// Checks eps in (0,1), positive budgets, and 2 <= k_faces <= n when n is given.
  void validate(Index point_count = -1) const;
};

/// A point of conv(S) carried together with its convex coefficients.
struct Iterate {
  Vector coeffs; // length n, nonnegative, sums to 1
  Vector point;  // cached sum_i coeffs_i v_i
  double gap = 0.0;

  static Iterate at_vertex(const PointSet& s, const Vector& p, Index j);
  static Iterate from_coeffs(const PointSet& s, const Vector& p, Vector coeffs);

  /// Clamps negatives, renormalises, and recomputes the cached point and gap.
  void refresh(const PointSet& s, const Vector& p);
};

/// Sum of squared coordinate differences, accumulated left to right.
double squared_distance(const Vector& u, const Vector& v);

/// d(p', v) >= d(p, v), evaluated as (p' - p)^T (p' + p - 2v) >= 0, the factored
/// form of |p'|^2 - |p|^2 >= 2 v^T (p' - p).
bool pivot_predicate(const Vector& iterate_point, const Vector& p, const Vector& v);

/// (p' - p)^T (v - p) <= 0, i.e. the angle p'pv is at least a right angle.
bool strict_pivot_predicate(const Vector& iterate_point, const Vector& p, const Vector& v);

struct SegmentProjection {
  Vector point;
  double alpha = 0.0; // point = (1 - alpha) a + alpha b
};

/// Nearest point to p on [a, b]. A degenerate segment returns (a, 0).
SegmentProjection project_to_segment(const Vector& p, const Vector& a, const Vector& b);

struct TriangleProjection {
  Vector point;
  std::array<double, 3> barycentric{};
};

/// Nearest point to p on conv{a, b, c}; degenerate triangles fall back to
/// the best edge.
TriangleProjection project_to_triangle(const Vector& p, const Vector& a, const Vector& b,
                                       const Vector& c);

/// Absolute-plus-relative comparison slack used across the library.
inline double comparison_slack(double scale) { return 1e-12 * (1.0 + scale); }

} // namespace hullcheck
