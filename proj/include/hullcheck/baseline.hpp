#pragma once

// Frank-Wolfe baseline with exact line search, and a brute-force nearest-point
// oracle for small instances.

#include "hullcheck/solver.hpp"

#include <string_view>
#include <vector>

namespace hullcheck {

/// x on the simplex, with f(x) = |Ax - p|^2.
struct GreedyState {
  Vector x;
  Vector point; // Ax
  double objective = 0.0;

  static GreedyState at_vertex(const PointSet& s, const Vector& p, Index j);
};

/// df/dx_i = 2 v_i^T (Ax - p).
Vector greedy_gradient(const GreedyState& state, const PointSet& s, const Vector& p);

struct GreedyStep {
  GreedyState state;
  Index coordinate = 0; // argmin of the gradient, lowest index on ties
  double alpha = 0.0;   // exact line search, clamped to [0,1]
};

GreedyStep greedy_step(const GreedyState& state, const PointSet& s, const Vector& p);

/// Runs greedy steps from the vertex nearest p until |Ax - p| < eps R. Reports
/// a Witness when no coordinate can decrease f below |Ax|^2 - |p|^2, which is
/// the same test as the absence of a pivot.
SolveResult greedy_solve(const PointSet& s, const Vector& p, const Tolerances& tol);

struct NearestPoint {
  Vector point;
  double distance = 0.0;
  std::vector<Index> support;
};

/// Exact nearest point of conv(S) to p by face enumeration. Requires n <= 12
/// and m <= 6; throws std::invalid_argument otherwise.
NearestPoint oracle_nearest(const PointSet& s, const Vector& p);

enum class Membership : std::uint8_t { Inside, Outside, Ambiguous };

std::string_view to_string(Membership verdict);

/// Inside if the distance is within 1e-12 (1 + |p|) of zero, Outside if it
/// exceeds margin, Ambiguous otherwise.
Membership oracle_membership(const PointSet& s, const Vector& p, double margin);

} // namespace hullcheck
