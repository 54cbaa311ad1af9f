#pragma once

#include "hullcheck/solver.hpp"

#include <variant>

namespace hullcheck {

/// p + (d(p,p')/d(p,v_j)) (v_j - p) halved with p'. Throws std::domain_error when p == v_j.
Vector virtual_step(const Vector& p_prime, const Vector& p, const Vector& v_j);

/// Coordinates within eps of p; no convex coefficients are available.
struct CoordApprox {
  Vector point;
  double gap = 0.0;
  double radius = 0.0;
  double eps_used = 0.0;
};

/// A point q (not necessarily in conv(S)) with d(q, v_i) < d(p, v_i) for all i,
/// and the bisector of p and q that separates p from S.
struct GeneralWitness {
  Vector point;
  Vector normal;
  double offset = 0.0;
};

using VirtualOutcome = std::variant<CoordApprox, GeneralWitness, Inconclusive>;

struct VirtualResult {
  VirtualOutcome outcome;
  RunStats stats;
};

VirtualResult solve_virtual(const PointSet& s, const Vector& p, const Tolerances& tol);

/// Iterations after which the sqrt(3)/2 contraction forces gap < eps * scale
/// from delta0: ceil(ln(eps * scale / delta0) / ln(sqrt(3)/2)) + 2, at least 2.
std::int64_t virtual_iteration_ceiling(double eps, double scale, double delta0);

/// One outer AVTA step from `iterate` using pivot `pivot`.
struct AvtaCycle {
  Index pivot = 0;
  Vector virtual_point;       // p-bar'' (inner query)
  Iterate plain;              // ordinary triangle step p''
  Iterate inner;              // last inner iterate, carried over S
  std::optional<Witness> witness; // inner witness against p-bar'', re-expressed for p
  std::int64_t inner_scans = 0;
};

AvtaCycle avta_cycle(const PointSet& s, const Vector& p, const Iterate& iterate, Index pivot,
                     const Tolerances& tol);

SolveResult avta_solve(const PointSet& s, const Vector& p, const Tolerances& tol);

/// Requires 2 <= tol.k_faces <= n. With k_faces == 2 the iterates coincide with solve.
SolveResult delta_k_solve(const PointSet& s, const Vector& p, const Tolerances& tol);

/// solve() under StrategyI or StrategyIV; throws std::invalid_argument for other rules.
SolveResult auxiliary_solve(const PointSet& s, const Vector& p, const Tolerances& tol);

} // namespace hullcheck
