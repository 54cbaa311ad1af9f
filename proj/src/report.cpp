#include "hullcheck/report.hpp"

#include "hullcheck/baseline.hpp"
#include "hullcheck/io.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace hullcheck {

using json = nlohmann::ordered_json;

std::string_view to_string(Mode mode) {
  switch (mode) {
  case Mode::Membership: return "membership";
  case Mode::LpNoRecession: return "lp_norecession";
  case Mode::LpBoundedM: return "lp_boundedM";
  case Mode::LpDoubling: return "lp_doubling";
  case Mode::Balls: return "balls";
  }
  return "unknown";
}

std::string_view to_string(VariantKind variant) {
  switch (variant) {
  case VariantKind::Triangle: return "triangle";
  case VariantKind::Virtual: return "virtual";
  case VariantKind::Avta: return "avta";
  case VariantKind::DeltaK: return "delta_k";
  case VariantKind::Greedy: return "greedy";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  for (auto m : {Mode::Membership, Mode::LpNoRecession, Mode::LpBoundedM, Mode::LpDoubling, Mode::Balls}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

VariantKind parse_variant(std::string_view name) {
  for (auto v : {VariantKind::Triangle, VariantKind::Virtual, VariantKind::Avta, VariantKind::DeltaK,
                 VariantKind::Greedy}) {
    if (to_string(v) == name) return v;
  }
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

namespace {

using Verdict = MembershipOutcome::Verdict;

Verdict verdict_of(const Certificate& cert) {
  if (std::holds_alternative<ApproxSolution>(cert)) return Verdict::Approx;
  if (std::holds_alternative<Witness>(cert)) return Verdict::Witness;
  return Verdict::Inconclusive;
}

Verdict verdict_of(const VirtualOutcome& out) {
  if (std::holds_alternative<CoordApprox>(out)) return Verdict::Approx;
  if (std::holds_alternative<GeneralWitness>(out)) return Verdict::Witness;
  return Verdict::Inconclusive;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Approx: return "feasible";
  case Verdict::Witness: return "infeasible";
  case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int exit_code_of(Verdict v) {
  switch (v) {
  case Verdict::Approx: return kFeasible;
  case Verdict::Witness: return kInfeasible;
  case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json inconclusive_json(const Inconclusive& inc) {
  json j;
  j["type"] = "inconclusive";
  j["reason"] = std::string(to_string(inc.reason));
  j["coeffs"] = vector_json(inc.coeffs);
  j["point"] = vector_json(inc.point);
  j["gap"] = number(inc.gap);
  return j;
}

json virtual_json(const VirtualOutcome& out) {
  json j;
  if (const auto* a = std::get_if<CoordApprox>(&out)) {
    j["type"] = "coordinates-only";
    j["point"] = vector_json(a->point);
    j["gap"] = number(a->gap);
    j["radius"] = number(a->radius);
    j["eps"] = number(a->eps_used);
  } else if (const auto* w = std::get_if<GeneralWitness>(&out)) {
    j["type"] = "general-witness";
    j["point"] = vector_json(w->point);
    j["normal"] = vector_json(w->normal);
    j["offset"] = number(w->offset);
  } else {
    j = inconclusive_json(std::get<Inconclusive>(out));
  }
  return j;
}

json visibility_json(const RunStats& stats) {
  json j;
  j["nu_observed"] = number(stats.observed_nu);
  j["c_observed"] = number(stats.observed_c);
  return j;
}

json config_json(const RunConfig& c) {
  json j;
  j["eps"] = number(c.tol.eps);
  j["pivot_rule"] = std::string(to_string(c.tol.pivot_rule));
  j["max_iters"] = c.tol.max_iters;
  j["k"] = c.tol.k_faces;
  j["t"] = c.tol.t_inner;
  j["refresh_period"] = c.tol.refresh_period;
  j["halving"] = c.halving;
  if (c.mode != Mode::Membership && c.mode != Mode::Balls) {
    j["eps0"] = number(c.eps0);
    j["big_m"] = number(c.big_m);
    j["mu_cap"] = number(c.mu_cap);
  }
  j["seed"] = c.seed;
  return j;
}

json lp_result_json(const LpResult& result) {
  json j;
  if (const auto* f = std::get_if<ApproxFeasible>(&result)) {
    j["type"] = "lp-feasible";
    j["x0"] = vector_json(f->x0);
    j["residual"] = number(f->residual);
    j["bound"] = number(f->bound);
    j["last_coeff"] = number(f->last_coeff);
    j["mu"] = number(f->mu);
  } else if (const auto* w = std::get_if<InfeasibleCertificate>(&result)) {
    j["type"] = "lp-infeasible";
    j["context"] = w->context;
    json red;
    if (w->mu == 0.0) {
      red["kind"] = "no-recession";
    } else {
      red["kind"] = "bounded";
      red["mu"] = number(w->mu);
    }
    j["reduction"] = red;
    j["witness"] = certificate_json(w->inner);
  } else {
    const auto& inc = std::get<LpInconclusive>(result);
    j["type"] = "inconclusive";
    j["reason"] = inc.reason;
    if (inc.inner) j["inner"] = inconclusive_json(*inc.inner);
  }
  return j;
}

} // namespace

json vector_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(number(v(i)));
  return arr;
}

json certificate_json(const Certificate& cert) {
  json j;
  if (const auto* a = std::get_if<ApproxSolution>(&cert)) {
    j["type"] = "approx";
    j["coeffs"] = vector_json(a->coeffs);
    j["point"] = vector_json(a->point);
    j["gap"] = number(a->gap);
    j["radius"] = number(a->radius);
    j["eps"] = number(a->eps_used);
  } else if (const auto* w = std::get_if<Witness>(&cert)) {
    j["type"] = "witness";
    j["coeffs"] = vector_json(w->coeffs);
    j["point"] = vector_json(w->point);
    j["witnessed"] = vector_json(w->witnessed);
    j["gap"] = number(w->gap);
    j["normal"] = vector_json(w->normal);
    j["offset"] = number(w->offset);
    j["distance_lo"] = number(w->distance_lo);
    j["distance_hi"] = number(w->distance_hi);
  } else {
    j = inconclusive_json(std::get<Inconclusive>(cert));
  }
  return j;
}

json stats_json(const RunStats& stats) {
  json j;
  j["iterations"] = stats.iterations;
  j["pivot_scans"] = stats.pivot_scans;
  j["auxiliary_pivots"] = stats.auxiliary_pivots;
  j["radius"] = number(stats.radius);
  j["initial_gap"] = stats.gap_series.empty() ? json(nullptr) : number(stats.gap_series.front());
  j["final_gap"] = stats.gap_series.empty() ? json(nullptr) : number(stats.gap_series.back());
  j["observed_nu"] = number(stats.observed_nu);
  j["observed_c"] = number(stats.observed_c);
  return j;
}

std::string trace_csv(const RunStats& stats) {
  std::string out = "iter,gap,pivot_index,pivot_angle\n";
  for (std::size_t k = 0; k < stats.gap_series.size(); ++k) {
    out += std::to_string(k) + ',' + format_double(stats.gap_series[k]) + ',';
    if (k > 0 && k - 1 < stats.pivot_index_series.size()) {
      out += std::to_string(stats.pivot_index_series[k - 1]) + ',' +
             format_double(stats.pivot_angle_series[k - 1]);
    } else {
      out += ',';
    }
    out += '\n';
  }
  return out;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

MembershipOutcome run_membership(VariantKind variant, const PointSet& s, const Vector& p,
                                 const Tolerances& tol, const SolveOptions& options) {
  MembershipOutcome out;
  auto take = [&](SolveResult r) {
    out.verdict = verdict_of(r.certificate);
    out.certificate = std::move(r.certificate);
    out.stats = std::move(r.stats);
    out.final_iterate = std::move(r.final_iterate);
  };
  switch (variant) {
  case VariantKind::Triangle: take(solve(s, p, tol, options)); break;
  case VariantKind::Avta: take(avta_solve(s, p, tol)); break;
  case VariantKind::DeltaK: take(delta_k_solve(s, p, tol)); break;
  case VariantKind::Greedy: take(greedy_solve(s, p, tol)); break;
  case VariantKind::Virtual: {
    auto r = solve_virtual(s, p, tol);
    out.verdict = verdict_of(r.outcome);
    out.virtual_outcome = std::move(r.outcome);
    out.stats = std::move(r.stats);
    break;
  }
  }
  return out;
}

HalvingOutcome halving_membership(VariantKind variant, const PointSet& s, const Vector& p,
                                  const Tolerances& tol) {
  const double floor = tol.eps;
  HalvingOutcome out;
  std::optional<Iterate> warm;
  double eps = std::max(0.5, floor);
  for (;;) {
    Tolerances round_tol = tol;
    round_tol.eps = eps;
    SolveOptions opts;
    if (variant == VariantKind::Triangle) opts.warm_start = warm;
    MembershipOutcome r = run_membership(variant, s, p, round_tol, opts);
    out.rounds.push_back({eps, r.stats.iterations, r.verdict});
    out.total_iterations += r.stats.iterations;
    warm = r.final_iterate;
    const bool last = eps <= floor;
    out.final = std::move(r);
    if (out.final.verdict != Verdict::Approx || last) break;
    eps = std::max(0.5 * eps, floor);
  }
  return out;
}

RunOutput execute(const RunConfig& config, const RunInputs& inputs) {
  config.tol.validate();
  const auto started = std::chrono::steady_clock::now();
  RunOutput out;
  json& rep = out.report;
  rep["schema"] = "hullcheck/1";
  rep["mode"] = std::string(to_string(config.mode));
  rep["variant"] = std::string(to_string(config.variant));
  rep["config"] = config_json(config);

  auto need_points = [&]() {
    if (!inputs.points || !inputs.query) throw InputError("this mode needs --points and --query");
  };
  auto need_lp = [&]() {
    if (!inputs.lp) throw InputError("this mode needs --lp-a and --lp-b");
  };
  auto triangle_only = [&]() {
    if (config.variant != VariantKind::Triangle) {
      throw std::invalid_argument(std::string(to_string(config.mode)) + " mode supports only the triangle variant");
    }
  };

  switch (config.mode) {
  case Mode::Membership: {
    need_points();
    const PointSet& s = *inputs.points;
    const Vector& p = *inputs.query;
    if (config.variant == VariantKind::DeltaK && config.tol.k_faces > s.count()) {
      throw std::invalid_argument("--k must not exceed the number of points");
    }
    rep["instance"] = {{"dim", s.dim()}, {"count", s.count()}};
    MembershipOutcome result;
    json halving_rounds;
    std::int64_t total = 0;
    if (config.halving) {
      HalvingOutcome h = halving_membership(config.variant, s, p, config.tol);
      for (const auto& r : h.rounds) {
        halving_rounds.push_back({{"eps", number(r.eps)}, {"iterations", r.iterations},
                                  {"verdict", std::string(verdict_name(r.verdict))}});
      }
      total = h.total_iterations;
      result = std::move(h.final);
    } else {
      result = run_membership(config.variant, s, p, config.tol);
      total = result.stats.iterations;
    }
    rep["verdict"] = std::string(verdict_name(result.verdict));
    if (result.virtual_outcome) {
      rep["coordinates_only"] = true;
      rep["certificate"] = virtual_json(*result.virtual_outcome);
    } else {
      rep["certificate"] = certificate_json(*result.certificate);
    }
    json st = stats_json(result.stats);
    if (config.halving) {
      st["total_iterations"] = total;
      st["halving_rounds"] = halving_rounds;
    }
    rep["stats"] = st;
    rep["visibility"] = visibility_json(result.stats);
    out.exit_code = exit_code_of(result.verdict);
    out.stats = std::move(result.stats);
    break;
  }
  case Mode::Balls: {
    need_points();
    triangle_only();
    const BallSystem balls = BallSystem::through(*inputs.points, *inputs.query);
    rep["instance"] = {{"dim", balls.centers().dim()}, {"count", balls.centers().count()}};
    RunStats stats;
    const BallsResult r = solve_intersecting_balls(balls, config.tol, &stats);
    json cert;
    if (const auto* e = std::get_if<EmptyIntersection>(&r)) {
      rep["verdict"] = "empty-intersection";
      cert["type"] = "empty-intersection";
      cert["approx"] = certificate_json(e->certificate);
      out.exit_code = kFeasible;
    } else if (const auto* q = std::get_if<IntersectionPoint>(&r)) {
      rep["verdict"] = "intersection-point";
      cert["type"] = "intersection-point";
      cert["point"] = vector_json(q->point);
      cert["coeffs"] = vector_json(q->coeffs);
      cert["radii"] = vector_json(balls.radii());
      out.exit_code = kInfeasible;
    } else {
      rep["verdict"] = "inconclusive";
      cert = inconclusive_json(std::get<Inconclusive>(r));
      out.exit_code = kInconclusive;
    }
    rep["certificate"] = cert;
    rep["stats"] = stats_json(stats);
    rep["visibility"] = visibility_json(stats);
    out.stats = std::move(stats);
    break;
  }
  case Mode::LpNoRecession:
  case Mode::LpBoundedM:
  case Mode::LpDoubling: {
    need_lp();
    triangle_only();
    const LpInstance& lp = *inputs.lp;
    lp.validate();
    rep["instance"] = {{"rows", lp.A.rows()}, {"cols", lp.A.cols()}};
    LpOptions opts;
    opts.max_iters = config.tol.max_iters;
    opts.pivot_rule = config.tol.pivot_rule;
    LpRun run;
    if (config.mode == Mode::LpNoRecession) {
      if (!(config.eps0 > 0.0 && config.eps0 < 1.0)) throw std::invalid_argument("--eps0 must lie in (0,1)");
      run = two_phase_solve(lp, config.eps0, opts);
    } else if (config.mode == Mode::LpBoundedM) {
      if (!(config.big_m > 0.0)) throw std::invalid_argument("--big-m must be positive");
      run = bounded_m_solve(lp, config.big_m, config.tol.eps, opts);
    } else {
      if (!(config.mu_cap >= 1.0)) throw std::invalid_argument("--mu-cap must be at least 1");
      run = doubling_solve(lp, config.tol.eps, config.mu_cap, opts);
    }
    if (std::holds_alternative<ApproxFeasible>(run.result)) {
      rep["verdict"] = "feasible";
      out.exit_code = kFeasible;
    } else if (std::holds_alternative<InfeasibleCertificate>(run.result)) {
      rep["verdict"] = "infeasible";
      out.exit_code = kInfeasible;
    } else {
      rep["verdict"] = "inconclusive";
      out.exit_code = kInconclusive;
    }
    rep["certificate"] = lp_result_json(run.result);
    json st;
    std::int64_t iterations = 0;
    std::int64_t scans = 0;
    json phases = json::array();
    for (const auto& ph : run.phases) {
      iterations += ph.stats.iterations;
      scans += ph.stats.pivot_scans;
      json pj = stats_json(ph.stats);
      pj["name"] = ph.name;
      pj["eps"] = number(ph.eps);
      pj["mu"] = number(ph.mu);
      phases.push_back(pj);
    }
    st["iterations"] = iterations;
    st["pivot_scans"] = scans;
    st["r_prime"] = number(run.r_prime);
    st["b_norm"] = number(run.b_norm);
    if (config.mode == Mode::LpNoRecession) st["delta0_lower"] = number(run.delta0_lower);
    if (config.mode == Mode::LpDoubling) st["rounds"] = run.rounds;
    st["phases"] = phases;
    rep["stats"] = st;
    if (!run.phases.empty()) out.stats = run.phases.back().stats;
    rep["visibility"] = visibility_json(out.stats);
    break;
  }
  }

  if (config.wall_clock) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    rep["timings"] = {{"wall_ms", std::chrono::duration<double, std::milli>(elapsed).count()}};
  } else {
    rep["timings"] = nullptr;
  }
  return out;
}

} // namespace hullcheck
