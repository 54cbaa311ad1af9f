#pragma once

// Sampled diagnostics for the visibility constants.

#include "hullcheck/solver.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace hullcheck {

struct VisibilityReport {
  std::int64_t samples = 0;   // draws from the simplex
  std::int64_t accepted = 0;  // draws outside the eps R ball about p
  std::int64_t witnesses = 0; // accepted draws with no pivot
  double theta_star_sampled = 0.0; // max over accepted draws of the best pivot angle
  double nu_sampled = 0.0;         // sin(theta_star_sampled)
  double phi_star_sampled = 0.0;   // max over draws of min_j cos(v_j - p, p' - p)
  double lambda_star_sampled = 0.0; // sqrt(1 - phi^2)
  std::optional<double> nu_observed;
  std::optional<double> c_observed;
};

/// Raised when a draw has no pivot although p was declared inside conv(S).
class VisibilityInconsistency : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Draws p' = S w with w ~ Dirichlet(1), keeps draws with d(p', p) >= eps R,
/// and records the smallest pivot angle at each. `p_inside` enables the
/// distance-duality consistency check.
VisibilityReport visibility_probe(const PointSet& s, const Vector& p, double eps,
                                  std::int64_t samples, std::uint64_t seed, bool p_inside = false,
                                  const RunStats* observed = nullptr);

} // namespace hullcheck
