#include "hullcheck/baseline.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hullcheck {

GreedyState GreedyState::at_vertex(const PointSet& s, const Vector& p, Index j) {
  GreedyState st;
  st.x = Vector::Zero(s.count());
  st.x(j) = 1.0;
  st.point = s.point(j);
  st.objective = squared_distance(st.point, p);
  return st;
}

Vector greedy_gradient(const GreedyState& state, const PointSet& s, const Vector& p) {
  return 2.0 * (s.matrix().transpose() * (state.point - p));
}

GreedyStep greedy_step(const GreedyState& state, const PointSet& s, const Vector& p) {
  const Vector grad = greedy_gradient(state, s, p);
  Index j = 0;
  for (Index i = 1; i < grad.size(); ++i) {
    if (grad(i) < grad(j)) j = i;
  }
  // f(x + a(e_j - x)) is quadratic in a with minimiser (p - Ax)^T (v_j - Ax) / |v_j - Ax|^2.
  const Vector dir = s.point(j) - state.point;
  const double len2 = dir.squaredNorm();
  const double alpha = len2 > 0.0 ? std::clamp((p - state.point).dot(dir) / len2, 0.0, 1.0) : 0.0;

  GreedyStep out;
  out.coordinate = j;
  out.alpha = alpha;
  out.state.x = (1.0 - alpha) * state.x;
  out.state.x(j) += alpha;
  out.state.point = (1.0 - alpha) * state.point + alpha * s.point(j);
  out.state.objective = squared_distance(out.state.point, p);
  if (out.state.objective > state.objective) out.state = state;
  return out;
}

SolveResult greedy_solve(const PointSet& s, const Vector& p, const Tolerances& tol) {
  tol.validate();
  if (p.size() != s.dim()) throw std::invalid_argument("query dimension does not match points");
  SolveResult out;
  RunStats& stats = out.stats;
  stats.radius = s.radius_about(p);

  GreedyState st = GreedyState::at_vertex(s, p, s.nearest_index(p));
  auto gap_of = [](const GreedyState& g) { return std::sqrt(g.objective); };
  stats.gap_series.push_back(gap_of(st));

  auto as_iterate = [&](const GreedyState& g) {
    Iterate it;
    it.coeffs = g.x;
    it.point = g.point;
    it.gap = gap_of(g);
    return it;
  };
  auto finish = [&](Certificate cert) {
    stats.finalize_visibility(tol.eps);
    out.certificate = std::move(cert);
    out.final_iterate = as_iterate(st);
    return out;
  };
  auto inconclusive = [&](InconclusiveReason reason) {
    return finish(Inconclusive{reason, st.x, st.point, gap_of(st)});
  };

  for (;;) {
    const double gap = gap_of(st);
    if (gap == 0.0 || gap < tol.eps * stats.radius) {
      return finish(ApproxSolution{st.x, st.point, gap, stats.radius, tol.eps});
    }
    if (stats.iterations >= tol.max_iters) return inconclusive(InconclusiveReason::MaxIterations);

    const Vector grad = greedy_gradient(st, s, p);
    stats.pivot_scans += s.count();
    const double lhs = st.point.squaredNorm() - p.squaredNorm();
    if (grad.minCoeff() > lhs) {
      try {
        const Hyperplane h = separating_hyperplane(s, st.point, p);
        const auto [lo, hi] = distance_bracket(gap);
        return finish(Witness{st.x, st.point, p, gap, h.normal, h.offset, lo, hi});
      } catch (const std::domain_error&) {
        return inconclusive(InconclusiveReason::NumericalTie);
      }
    }

    const GreedyStep step = greedy_step(st, s, p);
    const double next_gap = gap_of(step.state);
    if (!(next_gap < gap)) return inconclusive(InconclusiveReason::Stalled);
    const double cosine = pivot_angle_cosine(st.point, p, s.point(step.coordinate));
    ++stats.iterations;
    stats.gap_series.push_back(next_gap);
    stats.pivot_angle_series.push_back(std::acos(std::clamp(cosine, -1.0, 1.0)));
    stats.pivot_index_series.push_back(step.coordinate);
    stats.pivot_radius_series.push_back(std::sqrt(squared_distance(s.point(step.coordinate), p)));
    st = step.state;
  }
}

namespace {

bool lex_less(const std::vector<Index>& a, const std::vector<Index>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Advances `idx` to the next k-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<Index>& idx, Index n) {
  const auto k = static_cast<Index>(idx.size());
  for (Index i = k - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < n - k + i) {
      ++idx[static_cast<std::size_t>(i)];
      for (Index j = i + 1; j < k; ++j) {
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

} // namespace

NearestPoint oracle_nearest(const PointSet& s, const Vector& p) {
  const Index m = s.dim();
  const Index n = s.count();
  if (n > 12 || m > 6) {
    throw std::invalid_argument("oracle_nearest: limited to n <= 12 and m <= 6");
  }
  if (p.size() != m) throw std::invalid_argument("oracle_nearest: dimension mismatch");

  NearestPoint best;
  best.distance = std::numeric_limits<double>::infinity();
  const double tie = 1e-14;

  for (Index k = 1; k <= std::min(n, m + 1); ++k) {
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    do {
      const Vector v0 = s.point(idx[0]);
      Vector candidate = v0;
      if (k > 1) {
        Matrix W(m, k - 1);
        for (Index c = 1; c < k; ++c) W.col(c - 1) = s.point(idx[static_cast<std::size_t>(c)]) - v0;
        Eigen::ColPivHouseholderQR<Matrix> qr(W);
        qr.setThreshold(1e-12);
        if (qr.rank() < k - 1) continue;
        const Vector lambda = qr.solve(p - v0);
        if (lambda.minCoeff() < -1e-12 || lambda.sum() > 1.0 + 1e-12) continue;
        candidate = v0 + W * lambda;
      }
      const double d = std::sqrt(squared_distance(candidate, p));
      const bool better = d < best.distance - tie * (1.0 + best.distance);
      const bool tied = !better && d <= best.distance + tie * (1.0 + best.distance);
      if (best.support.empty() || better || (tied && lex_less(idx, best.support))) {
        best.point = candidate;
        best.distance = d;
        best.support = idx;
      }
    } while (next_combination(idx, n));
  }
  return best;
}

std::string_view to_string(Membership verdict) {
  switch (verdict) {
  case Membership::Inside: return "inside";
  case Membership::Outside: return "outside";
  case Membership::Ambiguous: return "ambiguous";
  }
  return "unknown";
}

Membership oracle_membership(const PointSet& s, const Vector& p, double margin) {
  const double d = oracle_nearest(s, p).distance;
  if (d <= 1e-12 * (1.0 + p.norm())) return Membership::Inside;
  if (d > margin) return Membership::Outside;
  return Membership::Ambiguous;
}

} // namespace hullcheck
