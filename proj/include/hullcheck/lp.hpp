#pragma once

// Feasibility of {x : Ax = b, x >= 0} through convex hull membership.

#include "hullcheck/solver.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hullcheck {

struct LpInstance {
  Matrix A; // m x n, columns a_i
  Vector b;

  /// Throws std::invalid_argument on shape mismatch or non-finite entries.
  void validate() const;
};

struct ApproxFeasible {
  Vector x0;              // x0 >= 0
  double residual = 0.0;  // d(A x0, b)
  double bound = 0.0;     // residual < bound
  double last_coeff = 0.0; // alpha_{n+1} (no-recession) or 0
  double mu = 1.0;        // scaling used (bounded-M / doubling)
};

struct InfeasibleCertificate {
  Witness inner;       // witness in the reduced instance
  std::string context; // which reduced instance it refers to
  double mu = 0.0;     // 0: no-recession reduction; else query b/mu against {a_i, 0}
};

struct LpInconclusive {
  std::string reason;
  std::optional<Inconclusive> inner;
};

using LpResult = std::variant<ApproxFeasible, InfeasibleCertificate, LpInconclusive>;

struct LpPhase {
  std::string name;
  double eps = 0.0;
  double mu = 1.0;
  RunStats stats;
};

struct LpRun {
  LpResult result;
  std::vector<LpPhase> phases;
  double r_prime = 0.0;
  double b_norm = 0.0;
  double delta0_lower = 0.0; // two-phase only
  int rounds = 0;            // doubling only
};

struct ReducedInstance {
  PointSet points; // a_1..a_n, then -b (no-recession) or 0 (augmented)
  Vector query;
  double r_prime = 0.0; // max{|a_i|, |b|}
};

/// 0 in conv{a_1..a_n, -b} iff the system is feasible (no recession directions).
ReducedInstance reduce_no_recession(const LpInstance& lp);

/// b/M in conv{a_1..a_n, 0}.
ReducedInstance reduce_bounded(const LpInstance& lp, double M);

class LastCoefficientCollapse : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// x0_i = alpha_i / alpha_{n+1}. Throws LastCoefficientCollapse when
/// alpha_{n+1} <= threshold.
Vector extract_x0(const Vector& coeffs, double threshold = 1e-14);

/// (D/2) min{1/R', eps0/(D + b0)} for D = delta0_lower.
double sensitivity_epsilon(double delta0_lower, double b_norm, double r_prime, double eps0);

/// Residual scale reached from inner accuracy eps: 2 (1 + b0/D) eps.
double forward_epsilon(double delta0_lower, double b_norm, double eps);

struct LpOptions {
  std::int64_t max_iters = 10'000'000;
  PivotRule pivot_rule = PivotRule::FirstIndex;
  double eps_floor = 0x1p-40; // Phase I halving floor
  /// When positive, the no-recession inner solve stops as soon as
  /// |p'| / alpha_{n+1} drops below this residual.
  double residual_target = 0.0;
};

LpRun two_phase_solve(const LpInstance& lp, double eps0, const LpOptions& options = {});

LpRun bounded_m_solve(const LpInstance& lp, double M, double eps, const LpOptions& options = {});

/// mu = 1, 2, 4, ... <= mu_cap, each round warm-started from the previous witness.
LpRun doubling_solve(const LpInstance& lp, double eps, double mu_cap, const LpOptions& options = {});

} // namespace hullcheck
