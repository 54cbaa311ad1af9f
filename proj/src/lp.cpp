#include "hullcheck/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hullcheck {

namespace {

Tolerances make_tol(double eps, const LpOptions& options) {
  Tolerances tol;
  tol.eps = eps;
  tol.max_iters = options.max_iters;
  tol.pivot_rule = options.pivot_rule;
  return tol;
}

double max_column_norm(const Matrix& A) {
  return A.cols() == 0 ? 0.0 : A.colwise().norm().maxCoeff();
}

std::string format_mu(double mu) {
  std::ostringstream os;
  os << mu;
  return os.str();
}

} // namespace

void LpInstance::validate() const {
  if (A.rows() < 1 || A.cols() < 1) throw std::invalid_argument("LP: A must be non-empty");
  if (b.size() != A.rows()) {
    throw std::invalid_argument("LP: b has " + std::to_string(b.size()) + " entries, A has " +
                                std::to_string(A.rows()) + " rows");
  }
  if (!A.allFinite() || !b.allFinite()) throw std::invalid_argument("LP: non-finite entry");
}

ReducedInstance reduce_no_recession(const LpInstance& lp) {
  lp.validate();
  const Index m = lp.A.rows();
  const Index n = lp.A.cols();
  Matrix cols(m, n + 1);
  cols.leftCols(n) = lp.A;
  cols.col(n) = -lp.b;
  return {PointSet(std::move(cols)), Vector::Zero(m), std::max(max_column_norm(lp.A), lp.b.norm())};
}

ReducedInstance reduce_bounded(const LpInstance& lp, double M) {
  lp.validate();
  if (!(M > 0.0) || !std::isfinite(M)) throw std::invalid_argument("LP: M must be positive");
  const Index m = lp.A.rows();
  const Index n = lp.A.cols();
  Matrix cols(m, n + 1);
  cols.leftCols(n) = lp.A;
  cols.col(n).setZero();
  return {PointSet(std::move(cols)), lp.b / M, std::max(max_column_norm(lp.A), lp.b.norm())};
}

Vector extract_x0(const Vector& coeffs, double threshold) {
  if (coeffs.size() < 2) throw std::invalid_argument("extract_x0: need at least two coefficients");
  const Index n = coeffs.size() - 1;
  const double last = coeffs(n);
  if (!(last > threshold)) {
    throw LastCoefficientCollapse("last coefficient collapsed: the sensitivity bound was not "
                                  "respected or the distance lower bound was overestimated");
  }
  return (coeffs.head(n) / last).cwiseMax(0.0);
}

double sensitivity_epsilon(double delta0_lower, double b_norm, double r_prime, double eps0) {
  if (!(delta0_lower > 0.0) || !(r_prime > 0.0)) {
    throw std::invalid_argument("sensitivity_epsilon: lower bound and R' must be positive");
  }
  return 0.5 * delta0_lower * std::min(1.0 / r_prime, eps0 / (delta0_lower + b_norm));
}

double forward_epsilon(double delta0_lower, double b_norm, double eps) {
  if (!(delta0_lower > 0.0)) throw std::invalid_argument("forward_epsilon: lower bound must be positive");
  return 2.0 * (1.0 + b_norm / delta0_lower) * eps;
}

LpRun two_phase_solve(const LpInstance& lp, double eps0, const LpOptions& options) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw std::invalid_argument("eps0 must lie in (0,1)");
  const ReducedInstance reduced = reduce_no_recession(lp);
  LpRun run;
  run.r_prime = reduced.r_prime;
  run.b_norm = lp.b.norm();

  const Index m = lp.A.rows();
  const Index n = lp.A.cols();
  const PointSet columns(lp.A);
  const Vector origin = Vector::Zero(m);

  // Phase I: a witness for 0 against conv(A), halving eps until one appears.
  std::optional<Witness> phase1;
  std::optional<Iterate> warm;
  for (double eps = 0.5;; eps *= 0.5) {
    if (eps < options.eps_floor) {
      run.result = LpInconclusive{"recession direction suspected: 0 in conv(A) numerically", {}};
      return run;
    }
    SolveOptions opts;
    opts.warm_start = warm;
    auto res = solve(columns, origin, make_tol(eps, options), opts);
    run.phases.push_back({"phase1", eps, 1.0, std::move(res.stats)});
    if (auto* w = std::get_if<Witness>(&res.certificate)) {
      phase1 = std::move(*w);
      break;
    }
    if (auto* inc = std::get_if<Inconclusive>(&res.certificate)) {
      run.result = LpInconclusive{"phase 1 did not finish", *inc};
      return run;
    }
    warm = res.final_iterate;
  }

  // Phase II on {a_i, -b}, started from the Phase I witness.
  run.delta0_lower = 0.5 * phase1->point.norm();
  const double eps = sensitivity_epsilon(run.delta0_lower, run.b_norm, run.r_prime, eps0);
  Iterate start;
  start.coeffs = Vector::Zero(n + 1);
  start.coeffs.head(n) = phase1->coeffs;
  start.point = phase1->point;
  start.gap = phase1->point.norm();

  SolveOptions opts;
  opts.warm_start = start;
  if (options.residual_target > 0.0) {
    const double target = options.residual_target;
    opts.accept = [n, target](const Iterate& it) {
      const double last = it.coeffs(n);
      return last > 0.0 && it.gap / last < target;
    };
  }
  auto res = solve(reduced.points, reduced.query, make_tol(eps, options), opts);
  run.phases.push_back({"phase2", eps, 1.0, res.stats});

  auto feasible = [&](const Iterate& it, double bound) -> LpResult {
    try {
      ApproxFeasible f;
      f.x0 = extract_x0(it.coeffs);
      f.residual = (lp.A * f.x0 - lp.b).norm();
      f.bound = bound;
      f.last_coeff = it.coeffs(n);
      return f;
    } catch (const LastCoefficientCollapse& e) {
      return LpInconclusive{e.what(), {}};
    }
  };

  if (std::holds_alternative<ApproxSolution>(res.certificate)) {
    run.result = feasible(res.final_iterate, eps0 * run.r_prime);
  } else if (auto* w = std::get_if<Witness>(&res.certificate)) {
    run.result = InfeasibleCertificate{*w, "no-recession reduction: 0 against conv{a_i, -b}"};
  } else {
    const auto& inc = std::get<Inconclusive>(res.certificate);
    if (inc.reason == InconclusiveReason::EarlyExit) {
      run.result = feasible(res.final_iterate, options.residual_target);
    } else {
      run.result = LpInconclusive{"phase 2 did not finish", inc};
    }
  }
  return run;
}

namespace {

struct BoundedRound {
  SolveResult solve;
  double inner_eps = 0.0;
};

BoundedRound solve_scaled(const ReducedInstance& reduced, double mu, double eps,
                          const LpOptions& options, std::optional<Iterate> warm) {
  const double inner_eps = std::min(eps / mu, 0.5);
  SolveOptions opts;
  opts.warm_start = std::move(warm);
  return {solve(reduced.points, reduced.query, make_tol(inner_eps, options), opts), inner_eps};
}

ApproxFeasible scaled_solution(const LpInstance& lp, const Iterate& it, double mu, double bound) {
  const Index n = lp.A.cols();
  ApproxFeasible f;
  f.x0 = (mu * it.coeffs.head(n)).cwiseMax(0.0);
  f.residual = (lp.A * f.x0 - lp.b).norm();
  f.bound = bound;
  f.mu = mu;
  return f;
}

// residual = mu * gap < eps * d(b/mu, v) <= eps (max|a_i| + |b|/mu), which is
// at most 2 R' eps when mu >= 1.
double scaled_bound(const LpInstance& lp, double mu, double eps, double r_prime) {
  if (mu >= 1.0) return 2.0 * r_prime * eps;
  return eps * (max_column_norm(lp.A) + lp.b.norm() / mu);
}

} // namespace

LpRun bounded_m_solve(const LpInstance& lp, double M, double eps, const LpOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const ReducedInstance reduced = reduce_bounded(lp, M);
  LpRun run;
  run.r_prime = reduced.r_prime;
  run.b_norm = lp.b.norm();

  auto round = solve_scaled(reduced, M, eps, options, std::nullopt);
  run.phases.push_back({"bounded", round.inner_eps, M, round.solve.stats});
  run.rounds = 1;
  const auto& cert = round.solve.certificate;
  if (std::holds_alternative<ApproxSolution>(cert)) {
    run.result = scaled_solution(lp, round.solve.final_iterate, M, scaled_bound(lp, M, eps, run.r_prime));
  } else if (auto* w = std::get_if<Witness>(&cert)) {
    run.result = InfeasibleCertificate{*w, "bounded augmentation: b/M against conv{a_i, 0}, M=" +
                                               format_mu(M),
                                       M};
  } else {
    run.result = LpInconclusive{"bounded solve did not finish", std::get<Inconclusive>(cert)};
  }
  return run;
}

LpRun doubling_solve(const LpInstance& lp, double eps, double mu_cap, const LpOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(mu_cap >= 1.0) || !std::isfinite(mu_cap)) throw std::invalid_argument("mu_cap must be >= 1");
  lp.validate();
  LpRun run;
  std::optional<Iterate> warm;
  std::optional<Witness> last_witness;
  double last_mu = 1.0;

  for (double mu = 1.0; mu <= mu_cap; mu *= 2.0) {
    const ReducedInstance reduced = reduce_bounded(lp, mu);
    run.r_prime = reduced.r_prime;
    run.b_norm = lp.b.norm();
    auto round = solve_scaled(reduced, mu, eps, options, warm);
    run.phases.push_back({"doubling", round.inner_eps, mu, round.solve.stats});
    ++run.rounds;
    const auto& cert = round.solve.certificate;
    if (std::holds_alternative<ApproxSolution>(cert)) {
      run.result =
          scaled_solution(lp, round.solve.final_iterate, mu, scaled_bound(lp, mu, eps, run.r_prime));
      return run;
    }
    if (auto* w = std::get_if<Witness>(&cert)) {
      last_witness = *w;
      last_mu = mu;
      warm = round.solve.final_iterate;
      continue;
    }
    run.result = LpInconclusive{"doubling round did not finish", std::get<Inconclusive>(cert)};
    return run;
  }
  run.result = InfeasibleCertificate{*last_witness, "doubling exhausted: witness at mu=" +
                                                        format_mu(last_mu) + " (cap " +
                                                        format_mu(mu_cap) + ")",
                                     last_mu};
  return run;
}

} // namespace hullcheck
