#include "hullcheck/variants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hullcheck {

namespace {

const double kVirtualRate = std::sqrt(3.0) / 2.0;

double distance(const Vector& a, const Vector& b) { return std::sqrt(squared_distance(a, b)); }

double effective_angle(double before, double after) {
  return std::asin(std::clamp(after / before, 0.0, 1.0));
}

void record(RunStats& stats, double gap, double angle, Index pivot, double radius) {
  ++stats.iterations;
  stats.gap_series.push_back(gap);
  stats.pivot_angle_series.push_back(angle);
  stats.pivot_index_series.push_back(pivot);
  stats.pivot_radius_series.push_back(radius);
}

Certificate witness_for(const PointSet& s, const Vector& p, const Iterate& it) {
  try {
    const Hyperplane h = separating_hyperplane(s, it.point, p);
    const auto [lo, hi] = distance_bracket(it.gap);
    return Witness{it.coeffs, it.point, p, it.gap, h.normal, h.offset, lo, hi};
  } catch (const std::domain_error&) {
    return Inconclusive{InconclusiveReason::NumericalTie, it.coeffs, it.point, it.gap};
  }
}

Iterate expand(const PointSet& s, const Vector& p, const Matrix& anchor_coeffs, const Vector& lambda) {
  Iterate it;
  it.coeffs = (anchor_coeffs * lambda).cwiseMax(0.0);
  it.point = s.matrix() * it.coeffs;
  it.gap = distance(it.point, p);
  return it;
}

// Inner solves run without auxiliary points.
PivotRule inner_rule(PivotRule rule) {
  return rule == PivotRule::StrategyI || rule == PivotRule::StrategyIV ? PivotRule::FirstIndex : rule;
}

} // namespace

Vector virtual_step(const Vector& p_prime, const Vector& p, const Vector& v_j) {
  const double r = distance(p, v_j);
  if (!(r > 0.0)) throw std::domain_error("virtual_step: pivot coincides with p");
  const double delta = distance(p, p_prime);
  const Vector v_bar = p + (delta / r) * (v_j - p);
  return 0.5 * p_prime + 0.5 * v_bar;
}

std::int64_t virtual_iteration_ceiling(double eps, double scale, double delta0) {
  if (!(delta0 > 0.0) || !(eps * scale > 0.0)) return 2;
  const double ratio = eps * scale / delta0;
  if (ratio >= 1.0) return 2;
  return static_cast<std::int64_t>(std::ceil(std::log(ratio) / std::log(kVirtualRate))) + 2;
}

VirtualResult solve_virtual(const PointSet& s, const Vector& p, const Tolerances& tol) {
  tol.validate();
  VirtualResult out;
  RunStats& stats = out.stats;
  stats.radius = s.radius_about(p);

  Index v = s.nearest_index(p);
  Vector x = s.point(v);
  double gap = distance(x, p);
  double v_radius = gap;
  std::optional<Index> hint = v;
  stats.gap_series.push_back(gap);

  auto finish = [&](VirtualOutcome o) {
    stats.finalize_visibility(tol.eps);
    out.outcome = std::move(o);
    return out;
  };
  // Coordinates only: the coefficient field stays empty.
  auto inconclusive = [&](InconclusiveReason reason) {
    return finish(Inconclusive{reason, Vector(), x, gap});
  };

  for (;;) {
    if (gap == 0.0 || gap < tol.eps * v_radius) {
      return finish(CoordApprox{x, gap, stats.radius, tol.eps});
    }
    if (stats.iterations >= tol.max_iters) return inconclusive(InconclusiveReason::MaxIterations);

    const auto j = find_pivot(x, p, s, tol.pivot_rule, &stats.pivot_scans, hint);
    if (!j) {
      if (!is_witness(s, x, p)) return inconclusive(InconclusiveReason::NumericalTie);
      return finish(GeneralWitness{x, p - x, 0.5 * (p.squaredNorm() - x.squaredNorm())});
    }
    const Vector vj = s.point(*j);
    const Vector next = virtual_step(x, p, vj);
    const double next_gap = distance(next, p);
    if (!(next_gap < gap)) return inconclusive(InconclusiveReason::Stalled);

    v_radius = distance(vj, p);
    record(stats, next_gap, effective_angle(gap, next_gap), *j, v_radius);
    hint = j;
    x = next;
    gap = next_gap;
  }
}

AvtaCycle avta_cycle(const PointSet& s, const Vector& p, const Iterate& iterate, Index pivot,
                     const Tolerances& tol) {
  AvtaCycle cycle;
  cycle.pivot = pivot;
  const auto plain = triangle_step(iterate, pivot, p, s);
  if (!plain) throw std::domain_error("avta_cycle: degenerate pivot segment");
  cycle.plain = *plain;

  const Vector vj = s.point(pivot);
  cycle.virtual_point = virtual_step(iterate.point, p, vj);

  // Inner start: projection of p-bar'' onto [p', v_j].
  const auto proj = project_to_segment(cycle.virtual_point, iterate.point, vj);
  Iterate start;
  start.coeffs = (1.0 - proj.alpha) * iterate.coeffs;
  start.coeffs(pivot) += proj.alpha;
  start.point = proj.point;
  start.gap = distance(start.point, cycle.virtual_point);

  if (tol.t_inner <= 1) {
    cycle.inner = start;
    cycle.inner.gap = distance(start.point, p);
    return cycle;
  }

  Tolerances inner_tol = tol;
  inner_tol.max_iters = tol.t_inner - 1;
  inner_tol.pivot_rule = inner_rule(tol.pivot_rule);
  SolveOptions opts;
  opts.warm_start = start;
  const auto inner = solve(s, cycle.virtual_point, inner_tol, opts);
  cycle.inner_scans = inner.stats.pivot_scans;
  cycle.inner = inner.final_iterate;
  cycle.inner.gap = distance(cycle.inner.point, p);

  if (const auto* w = std::get_if<Witness>(&inner.certificate)) {
    // p-bar'' = a p + (1 - a) y with y in conv(S), a > 0, so the bisector also separates p.
    const Hyperplane h{w->normal, w->offset};
    if (separates(h, s, p)) {
      Witness out = *w;
      out.witnessed = cycle.virtual_point;
      out.distance_lo = (h.normal.dot(p) - h.offset) / h.normal.norm();
      out.distance_hi = distance(p, w->point);
      cycle.witness = std::move(out);
    }
  }
  return cycle;
}

SolveResult avta_solve(const PointSet& s, const Vector& p, const Tolerances& tol) {
  tol.validate();
  SolveResult out;
  RunStats& stats = out.stats;
  stats.radius = s.radius_about(p);

  const Index nearest = s.nearest_index(p);
  Iterate it = Iterate::at_vertex(s, p, nearest);
  double v_radius = it.gap;
  std::optional<Index> hint = nearest;
  stats.gap_series.push_back(it.gap);
  std::int64_t since_refresh = 0;

  auto finish = [&](Certificate cert) {
    stats.finalize_visibility(tol.eps);
    out.certificate = std::move(cert);
    out.final_iterate = it;
    return out;
  };
  auto inconclusive = [&](InconclusiveReason reason) {
    return finish(Inconclusive{reason, it.coeffs, it.point, it.gap});
  };

  for (;;) {
    if (it.gap == 0.0 || it.gap < tol.eps * v_radius) {
      return finish(ApproxSolution{it.coeffs, it.point, it.gap, stats.radius, tol.eps});
    }
    if (stats.iterations >= tol.max_iters) return inconclusive(InconclusiveReason::MaxIterations);

    const auto j = find_pivot(it.point, p, s, tol.pivot_rule, &stats.pivot_scans, hint);
    if (!j) return finish(witness_for(s, p, it));

    AvtaCycle cycle = avta_cycle(s, p, it, *j, tol);
    stats.pivot_scans += cycle.inner_scans;
    if (cycle.witness) return finish(*cycle.witness);

    // The inner iterate serves as a pivot for p; the plain step is the fallback.
    Iterate next = std::move(cycle.plain);
    if (auto via_inner = step_toward(it, cycle.inner.point, cycle.inner.coeffs, p);
        via_inner && via_inner->gap < next.gap) {
      next = std::move(*via_inner);
    }
    if (!(next.gap < it.gap)) return inconclusive(InconclusiveReason::Stalled);
    // Progress is judged before the refresh, whose recomputed gap may differ by roundoff.
    if (++since_refresh >= tol.refresh_period) {
      next.refresh(s, p);
      since_refresh = 0;
    }

    v_radius = distance(s.point(*j), p);
    record(stats, next.gap, effective_angle(it.gap, next.gap), *j, v_radius);
    hint = j;
    it = std::move(next);
  }
}

SolveResult delta_k_solve(const PointSet& s, const Vector& p, const Tolerances& tol) {
  tol.validate();
  const Index n = s.count();
  if (tol.k_faces < 2 || tol.k_faces > n) {
    throw std::invalid_argument("k_faces must lie in [2, " + std::to_string(n) + "]");
  }
  SolveResult out;
  RunStats& stats = out.stats;
  stats.radius = s.radius_about(p);

  const Index nearest = s.nearest_index(p);
  Iterate it = Iterate::at_vertex(s, p, nearest);
  double v_radius = it.gap;
  std::optional<Index> hint = nearest;
  stats.gap_series.push_back(it.gap);
  std::int64_t since_refresh = 0;

  // Face set P': anchor coefficients over S (columns) and the iterate's
  // barycentric weights over the anchors.
  std::vector<Vector> anchors{it.coeffs};
  Vector lambda = Vector::Ones(1);

  auto finish = [&](Certificate cert) {
    stats.finalize_visibility(tol.eps);
    out.certificate = std::move(cert);
    out.final_iterate = it;
    return out;
  };
  auto inconclusive = [&](InconclusiveReason reason) {
    return finish(Inconclusive{reason, it.coeffs, it.point, it.gap});
  };

  for (;;) {
    if (it.gap == 0.0 || it.gap < tol.eps * v_radius) {
      return finish(ApproxSolution{it.coeffs, it.point, it.gap, stats.radius, tol.eps});
    }
    if (stats.iterations >= tol.max_iters) return inconclusive(InconclusiveReason::MaxIterations);

    const auto j = find_pivot(it.point, p, s, tol.pivot_rule, &stats.pivot_scans, hint);
    if (!j) return finish(witness_for(s, p, it));

    Vector e_j = Vector::Zero(n);
    e_j(*j) = 1.0;
    anchors.push_back(e_j);
    const auto t = static_cast<Index>(anchors.size());
    Iterate next;
    double angle = 0.0;

    if (t == 2) {
      // P' = [p', v_j]: the ordinary triangle step.
      const auto step = triangle_step(it, *j, p, s);
      if (!step) return inconclusive(InconclusiveReason::Stalled);
      next = *step;
      angle = std::acos(std::clamp(pivot_angle_cosine(it.point, p, s.point(*j)), -1.0, 1.0));
      const Vector seg = s.point(*j) - it.point;
      const double a = std::clamp((p - it.point).dot(seg) / seg.squaredNorm(), 0.0, 1.0);
      lambda = (Vector(2) << 1.0 - a, a).finished();
    } else {
      Matrix coeff_cols(n, t);
      for (Index c = 0; c < t; ++c) coeff_cols.col(c) = anchors[static_cast<std::size_t>(c)];
      const Matrix anchor_points = s.matrix() * coeff_cols;
      if (t == 3) {
        const auto tri = project_to_triangle(p, anchor_points.col(0), anchor_points.col(1),
                                             anchor_points.col(2));
        lambda = Eigen::Map<const Vector>(tri.barycentric.data(), 3);
      } else {
        Vector start = Vector::Zero(t);
        start.head(t - 1) = lambda;
        Tolerances inner_tol = tol;
        inner_tol.eps = tol.eps / 4.0;
        inner_tol.max_iters = std::min<std::int64_t>(tol.max_iters, 100'000);
        inner_tol.pivot_rule = inner_rule(tol.pivot_rule);
        const PointSet face(anchor_points);
        SolveOptions opts;
        Iterate warm;
        warm.coeffs = start;
        warm.point = anchor_points * start;
        warm.gap = distance(warm.point, p);
        opts.warm_start = warm;
        const auto inner = solve(face, p, inner_tol, opts);
        stats.pivot_scans += inner.stats.pivot_scans;
        lambda = inner.final_iterate.coeffs;
        // The segment [p', v_j] is inside P'; never do worse than it.
        const auto step = triangle_step(it, *j, p, s);
        if (step && step->gap < distance(anchor_points * lambda, p)) {
          const Vector seg = s.point(*j) - it.point;
          const double a = std::clamp((p - it.point).dot(seg) / seg.squaredNorm(), 0.0, 1.0);
          lambda = (1.0 - a) * start;
          lambda(t - 1) += a;
        }
      }
      next = expand(s, p, coeff_cols, lambda);
      angle = effective_angle(it.gap, next.gap);
    }

    if (!(next.gap < it.gap)) return inconclusive(InconclusiveReason::Stalled);
    // Progress is judged before the refresh, whose recomputed gap may differ by roundoff.
    if (++since_refresh >= tol.refresh_period) {
      next.refresh(s, p);
      since_refresh = 0;
    }

    v_radius = distance(s.point(*j), p);
    record(stats, next.gap, angle, *j, v_radius);
    hint = j;
    it = std::move(next);

    if (t >= tol.k_faces) {
      anchors.assign(1, it.coeffs);
      lambda = Vector::Ones(1);
    }
  }
}

SolveResult auxiliary_solve(const PointSet& s, const Vector& p, const Tolerances& tol) {
  if (tol.pivot_rule != PivotRule::StrategyI && tol.pivot_rule != PivotRule::StrategyIV) {
    throw std::invalid_argument("auxiliary_solve requires strategy-i or strategy-iv");
  }
  return solve(s, p, tol);
}

} // namespace hullcheck
