#pragma once

#include "hullcheck/geometry.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hullcheck {

/// Iterate within eps of p, relative to R = max_i d(p, v_i).
struct ApproxSolution {
  Vector coeffs;
  Vector point;
  double gap = 0.0;
  double radius = 0.0;
  double eps_used = 0.0;
};

/// A point of conv(S) strictly closer than `witnessed` to every v_i, with the
/// orthogonal bisector normal^T x = offset separating `witnessed` from conv(S).
/// For the plain algorithm `witnessed` is the query point itself; variants that
/// certify through an intermediate target record it here, and the hyperplane
/// still separates the query point (see `separates_query`).
struct Witness {
  Vector coeffs;
  Vector point;
  Vector witnessed;
  double gap = 0.0;
  Vector normal;
  double offset = 0.0;
  double distance_lo = 0.0; // bounds on d(p, conv(S)) for the query point
  double distance_hi = 0.0;
};

enum class InconclusiveReason : std::uint8_t {
  MaxIterations,
  Stalled,      // a step failed to reduce the gap in floating point
  NumericalTie, // no pivot found but the strict witness check failed
  EarlyExit,    // the caller's acceptance hook stopped the run
};

std::string_view to_string(InconclusiveReason reason);

struct Inconclusive {
  InconclusiveReason reason = InconclusiveReason::MaxIterations;
  Vector coeffs;
  Vector point;
  double gap = 0.0;
};

using Certificate = std::variant<ApproxSolution, Witness, Inconclusive>;

struct RunStats {
  std::int64_t iterations = 0;
  std::vector<double> gap_series;          // delta_0 .. delta_K
  std::vector<double> pivot_angle_series;  // angle p p' v per step, radians
  std::vector<Index> pivot_index_series;   // >= n means auxiliary pivot (index - n)
  std::vector<double> pivot_radius_series; // d(p, pivot) per step
  double observed_nu = 0.0;
  double observed_c = std::numeric_limits<double>::infinity();
  std::int64_t pivot_scans = 0;
  std::int64_t auxiliary_pivots = 0;
  double radius = 0.0; // R

  /// Sets observed_nu to the largest sin(angle) over steps taken from iterates
  /// with gap >= eps * R, and observed_c = 1/nu^2 - 1.
  void finalize_visibility(double eps);
};

struct SolveOptions {
  /// Starting iterate; defaults to the vertex nearest p.
  std::optional<Iterate> warm_start;
  /// Consulted at every iterate; returning true ends the run with
  /// Inconclusive{EarlyExit} so the caller can apply its own acceptance test.
  std::function<bool(const Iterate&)> accept;
};

struct SolveResult {
  Certificate certificate;
  RunStats stats;
  Iterate final_iterate;
};

/// Pivot search over S at iterate_point. Returns nullopt exactly when the
/// point is a witness. The strict rules fall back to ordinary pivots when no
/// strict pivot exists; StrategyI/StrategyIV scan like FirstIndex here.
/// Under the first-index rules a `hint` (the previous pivot) is re-tested
/// before the scan, as the solver does.
std::optional<Index> find_pivot(const Vector& iterate_point, const Vector& p, const PointSet& s,
                                PivotRule rule, std::int64_t* scans = nullptr,
                                std::optional<Index> hint = std::nullopt);

/// Cosine of the pivot angle p p' v; 1 when p' coincides with p or v.
double pivot_angle_cosine(const Vector& iterate_point, const Vector& p, const Vector& v);

/// Moves to the nearest point to p on [p', v_j] and updates coefficients.
/// Returns nullopt for a degenerate segment (v_j == p').
std::optional<Iterate> triangle_step(const Iterate& iterate, Index pivot_index, const Vector& p,
                                     const PointSet& s);

/// Same as triangle_step for an arbitrary point of conv(S) given by its
/// coefficients over S.
std::optional<Iterate> step_toward(const Iterate& iterate, const Vector& target,
                                   const Vector& target_coeffs, const Vector& p);

SolveResult solve(const PointSet& s, const Vector& p, const Tolerances& tol,
                  const SolveOptions& options = {});

struct Hyperplane {
  Vector normal;
  double offset = 0.0;
};

/// c = p - p', gamma = (|p|^2 - |p'|^2)/2. Throws std::domain_error unless
/// p' is a witness and the hyperplane strictly separates p from every v_i.
Hyperplane separating_hyperplane(const PointSet& s, const Vector& witness_point, const Vector& p);

/// (gap/2, gap); throws std::invalid_argument for gap <= 0.
std::pair<double, double> distance_bracket(double witness_gap);

/// True iff d(x, v_i) < d(target, v_i) for every i.
bool is_witness(const PointSet& s, const Vector& x, const Vector& target);

/// normal^T q > offset and normal^T v_i < offset for all i.
bool separates(const Hyperplane& h, const PointSet& s, const Vector& q);

/// Balls B_i = {x : d(x, v_i) < r_i} sharing the boundary point p.
class BallSystem {
public:
  /// Throws std::invalid_argument unless d(p, v_i) = r_i within 1e-9 (1 + r_i).
  BallSystem(PointSet centers, Vector radii, Vector common_point);
  /// Radii taken as d(p, v_i).
  static BallSystem through(PointSet centers, Vector common_point);

  const PointSet& centers() const { return centers_; }
  const Vector& radii() const { return radii_; }
  const Vector& common_point() const { return common_point_; }

private:
  PointSet centers_;
  Vector radii_;
  Vector common_point_;
};

struct EmptyIntersection {
  ApproxSolution certificate;
};

struct IntersectionPoint {
  Vector point;
  Vector coeffs;
};

using BallsResult = std::variant<EmptyIntersection, IntersectionPoint, Inconclusive>;

/// `stats`, when given, receives the underlying run's statistics.
BallsResult solve_intersecting_balls(const BallSystem& balls, const Tolerances& tol,
                                     RunStats* stats = nullptr);

} // namespace hullcheck
