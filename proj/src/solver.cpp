#include "hullcheck/solver.hpp"

#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

namespace hullcheck {

std::string_view to_string(InconclusiveReason reason) {
  switch (reason) {
  case InconclusiveReason::MaxIterations: return "max-iters";
  case InconclusiveReason::Stalled: return "stalled";
  case InconclusiveReason::NumericalTie: return "numerical-tie";
  case InconclusiveReason::EarlyExit: return "early-exit";
  }
  return "unknown";
}

void RunStats::finalize_visibility(double eps) {
  observed_nu = 0.0;
  const double floor = eps * radius;
  for (std::size_t k = 0; k < pivot_angle_series.size(); ++k) {
    if (gap_series[k] >= floor) {
      observed_nu = std::max(observed_nu, std::sin(pivot_angle_series[k]));
    }
  }
  observed_c = observed_nu > 0.0 ? 1.0 / (observed_nu * observed_nu) - 1.0
                                 : std::numeric_limits<double>::infinity();
}

namespace {

enum class Kind { Ordinary, Strict };
enum class Pick { First, Best };

PivotRule base_rule(PivotRule rule) {
  switch (rule) {
  case PivotRule::StrategyI:
  case PivotRule::StrategyIV: return PivotRule::FirstIndex;
  default: return rule;
  }
}

// S plus auxiliary points that are explicit convex combinations of S.
// Index i < n is v_i; index n + k is auxiliary slot k.
class WorkingSet {
public:
  WorkingSet(const PointSet& s, const Vector& p, std::size_t aux_cap)
      : s_(s), p_(p), m_(s.dim()), n_(s.count()), cap_(aux_cap) {}

  Index base_count() const { return n_; }
  Index aux_count() const { return static_cast<Index>(aux_points_.size()); }

  const double* data(Index i) const {
    return i < n_ ? s_.matrix().data() + i * m_ : aux_points_[static_cast<std::size_t>(i - n_)].data();
  }

  Vector point(Index i) const { return Eigen::Map<const Vector>(data(i), m_); }

  void add(Vector point, Vector coeffs) {
    if (cap_ == 0) return;
    for (const auto& q : aux_points_) {
      if (kernels::squared_distance(q.data(), point.data(), m_) == 0.0) return;
    }
    if (aux_points_.size() < cap_) {
      aux_points_.push_back(std::move(point));
      aux_coeffs_.push_back(std::move(coeffs));
      newest_ = aux_points_.size() - 1;
    } else {
      newest_ = (newest_ + 1) % cap_;
      aux_points_[newest_] = std::move(point);
      aux_coeffs_[newest_] = std::move(coeffs);
    }
  }

  // Moves toward point i, expanding auxiliary coefficients over S.
  std::optional<Iterate> step(const Iterate& it, Index i) const {
    if (i < n_) return triangle_step(it, i, p_, s_);
    return step_toward(it, point(i), aux_coeffs_[static_cast<std::size_t>(i - n_)], p_);
  }

  Iterate iterate_at(Index i) const {
    if (i < n_) return Iterate::at_vertex(s_, p_, i);
    Iterate it;
    it.coeffs = aux_coeffs_[static_cast<std::size_t>(i - n_)];
    it.point = point(i);
    it.gap = std::sqrt(kernels::squared_distance(it.point.data(), p_.data(), m_));
    return it;
  }

  double radius_of(Index i) const {
    return std::sqrt(kernels::squared_distance(data(i), p_.data(), m_));
  }

  // Auxiliary slots, newest first.
  template <class F> bool for_each_aux(F&& f) const {
    const std::size_t k = aux_points_.size();
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t slot = (newest_ + k - j) % k;
      if (f(n_ + static_cast<Index>(slot))) return true;
    }
    return false;
  }

  template <class F> bool for_each_base(F&& f) const {
    for (Index i = 0; i < n_; ++i) {
      if (f(i)) return true;
    }
    return false;
  }

private:
  const PointSet& s_;
  const Vector& p_;
  Index m_;
  Index n_;
  std::size_t cap_;
  std::vector<Vector> aux_points_;
  std::vector<Vector> aux_coeffs_;
  std::size_t newest_ = 0;
};

// Per-iterate constants shared by every candidate test.
struct ScanContext {
  const double* x;
  const double* p;
  Index m;
  double gap2; // |x - p|^2

  ScanContext(const Vector& xv, const Vector& pv)
      : x(xv.data()), p(pv.data()), m(pv.size()) {
    gap2 = kernels::squared_distance(x, p, m);
  }

  bool qualifies(const double* v, Kind kind) const {
    if (kind == Kind::Ordinary) {
      if (!(kernels::pivot_margin(x, p, v, m) >= 0.0)) return false;
    } else if (!(kernels::centered_dot(x, v, p, m) <= 0.0)) {
      return false;
    }
    // v == p' gives a degenerate segment; skipped.
    return kernels::squared_distance(v, x, m) > 0.0;
  }

  // cos of angle p p' v, with p' at the vertex.
  double cosine(const double* v) const {
    const double a2 = gap2;
    const double b2 = kernels::squared_distance(v, x, m);
    if (a2 == 0.0 || b2 == 0.0) return 1.0;
    return kernels::centered_dot(p, v, x, m) / std::sqrt(a2 * b2);
  }
};

// Generic scan. `visit_order` enumerates candidates in priority order.
template <class Order>
std::optional<Index> scan(const ScanContext& ctx, const WorkingSet& ws, Kind kind, Pick pick,
                          Order&& visit_order, std::int64_t& scans) {
  std::optional<Index> best;
  double best_cos = -2.0;
  visit_order([&](Index i) {
    ++scans;
    const double* v = ws.data(i);
    if (!ctx.qualifies(v, kind)) return false;
    if (pick == Pick::First) {
      best = i;
      return true;
    }
    const double c = ctx.cosine(v);
    if (c > best_cos) {
      best_cos = c;
      best = i;
    }
    return false;
  });
  return best;
}

class Engine {
public:
  Engine(const PointSet& s, const Vector& p, PivotRule rule)
      : s_(s), p_(p), rule_(rule),
        ws_(s, p, rule == PivotRule::StrategyIV ? 32 : rule == PivotRule::StrategyI ? 16 : 0) {}

  WorkingSet& working_set() { return ws_; }

  std::optional<Index> find(const Vector& x, std::optional<Index> hint, std::int64_t& scans) const {
    const PivotRule base = base_rule(rule_);
    const ScanContext ctx(x, p_);
    if (base == PivotRule::StrictFirst || base == PivotRule::StrictBest) {
      const Pick pick = base == PivotRule::StrictFirst ? Pick::First : Pick::Best;
      if (auto r = scan_all(ctx, Kind::Strict, pick, hint, scans)) return r;
      return scan_all(ctx, Kind::Ordinary, pick, hint, scans);
    }
    const Pick pick = base == PivotRule::BestAngle ? Pick::Best : Pick::First;
    return scan_all(ctx, Kind::Ordinary, pick, hint, scans);
  }

  std::optional<Index> find_best(const Vector& x, std::int64_t& scans) const {
    const ScanContext ctx(x, p_);
    return scan_all(ctx, Kind::Ordinary, Pick::Best, std::nullopt, scans);
  }

  // First qualifying pivot whose step strictly lowers the gap in floating point.
  std::optional<std::pair<Index, Iterate>> find_progress(const Iterate& it, std::int64_t& scans) const {
    const ScanContext ctx(it.point, p_);
    const Index total = ws_.base_count() + ws_.aux_count();
    for (Index i = 0; i < total; ++i) {
      ++scans;
      if (!ctx.qualifies(ws_.data(i), Kind::Ordinary)) continue;
      if (auto next = ws_.step(it, i); next && next->gap < it.gap) return std::pair{i, std::move(*next)};
    }
    return std::nullopt;
  }

private:
  std::optional<Index> scan_all(const ScanContext& ctx, Kind kind, Pick pick,
                                std::optional<Index> hint, std::int64_t& scans) const {
    if (pick == Pick::First && hint) {
      ++scans;
      if (ctx.qualifies(ws_.data(*hint), kind)) return hint;
    }
    const bool aux_first = rule_ == PivotRule::StrategyIV;
    return scan(
        ctx, ws_, kind, pick,
        [&](auto&& f) {
          if (aux_first && ws_.for_each_aux(f)) return;
          if (ws_.for_each_base(f)) return;
          if (!aux_first) ws_.for_each_aux(f);
        },
        scans);
  }

  const PointSet& s_;
  const Vector& p_;
  PivotRule rule_;
  WorkingSet ws_;
};

// Cycling detector for StrategyIV.
class CycleWindow {
public:
  static constexpr std::size_t kWindow = 20;
  static constexpr int kRepeats = 5;
  static constexpr double kReduction = 0.01;

  // Returns the cycling pivots when the window signals a cycle.
  std::vector<Index> push(Index pivot, double gap_before, double gap_after) {
    window_.push_back({pivot, gap_before});
    if (window_.size() > kWindow) window_.pop_front();
    if (window_.size() < kWindow) return {};
    std::map<Index, int> counts;
    for (const auto& e : window_) ++counts[e.pivot];
    int top = 0;
    for (const auto& [i, c] : counts) top = std::max(top, c);
    const double start = window_.front().gap_before;
    if (top < kRepeats || !((start - gap_after) < kReduction * start)) return {};
    std::vector<Index> cycling;
    for (const auto& [i, c] : counts) {
      if (c >= 2) cycling.push_back(i);
    }
    if (cycling.size() < 2) return {};
    window_.clear();
    return cycling;
  }

private:
  struct Entry {
    Index pivot;
    double gap_before;
  };
  std::deque<Entry> window_;
};

void require_dims(const PointSet& s, const Vector& p) {
  if (p.size() != s.dim()) {
    throw std::invalid_argument("query dimension " + std::to_string(p.size()) +
                                " does not match point dimension " + std::to_string(s.dim()));
  }
}

} // namespace

std::optional<Index> find_pivot(const Vector& iterate_point, const Vector& p, const PointSet& s,
                                PivotRule rule, std::int64_t* scans, std::optional<Index> hint) {
  require_dims(s, p);
  require_dims(s, iterate_point);
  if (hint && (*hint < 0 || *hint >= s.count())) throw std::out_of_range("find_pivot: bad hint");
  const Engine engine(s, p, base_rule(rule));
  std::int64_t local = 0;
  auto r = engine.find(iterate_point, hint, local);
  if (scans) *scans += local;
  return r;
}

double pivot_angle_cosine(const Vector& iterate_point, const Vector& p, const Vector& v) {
  const ScanContext ctx(iterate_point, p);
  return ctx.cosine(v.data());
}

std::optional<Iterate> step_toward(const Iterate& iterate, const Vector& target,
                                   const Vector& target_coeffs, const Vector& p) {
  const Index m = p.size();
  const double len2 = kernels::squared_distance(target.data(), iterate.point.data(), m);
  if (len2 == 0.0) return std::nullopt;
  const double alpha =
      std::clamp(kernels::centered_dot(p.data(), target.data(), iterate.point.data(), m) / len2,
                 0.0, 1.0);
  Iterate next;
  next.coeffs = (1.0 - alpha) * iterate.coeffs + alpha * target_coeffs;
  next.coeffs = next.coeffs.cwiseMax(0.0);
  next.point = (1.0 - alpha) * iterate.point + alpha * target;
  next.gap = std::sqrt(kernels::squared_distance(next.point.data(), p.data(), m));
  return next;
}

std::optional<Iterate> triangle_step(const Iterate& iterate, Index pivot_index, const Vector& p,
                                     const PointSet& s) {
  if (pivot_index < 0 || pivot_index >= s.count()) {
    throw std::out_of_range("triangle_step: pivot index out of range");
  }
  const Index m = p.size();
  const double* v = s.matrix().data() + pivot_index * m;
  const double len2 = kernels::squared_distance(v, iterate.point.data(), m);
  if (len2 == 0.0) return std::nullopt;
  const double alpha =
      std::clamp(kernels::centered_dot(p.data(), v, iterate.point.data(), m) / len2, 0.0, 1.0);
  Iterate next;
  next.coeffs = (1.0 - alpha) * iterate.coeffs;
  next.coeffs(pivot_index) += alpha;
  next.point = (1.0 - alpha) * iterate.point + alpha * s.point(pivot_index);
  next.gap = std::sqrt(kernels::squared_distance(next.point.data(), p.data(), m));
  return next;
}

bool is_witness(const PointSet& s, const Vector& x, const Vector& target) {
  require_dims(s, x);
  require_dims(s, target);
  const Index m = s.dim();
  for (Index i = 0; i < s.count(); ++i) {
    const double* v = s.matrix().data() + i * m;
    if (!(kernels::squared_distance(x.data(), v, m) < kernels::squared_distance(target.data(), v, m))) {
      return false;
    }
  }
  return true;
}

bool separates(const Hyperplane& h, const PointSet& s, const Vector& q) {
  if (!(h.normal.dot(q) > h.offset)) return false;
  for (Index i = 0; i < s.count(); ++i) {
    if (!(h.normal.dot(s.point(i)) < h.offset)) return false;
  }
  return true;
}

Hyperplane separating_hyperplane(const PointSet& s, const Vector& witness_point, const Vector& p) {
  if (!is_witness(s, witness_point, p)) {
    throw std::domain_error("separating_hyperplane: point is not a witness");
  }
  Hyperplane h;
  h.normal = p - witness_point;
  h.offset = 0.5 * (p.squaredNorm() - witness_point.squaredNorm());
  if (!separates(h, s, p)) {
    throw std::domain_error("separating_hyperplane: bisector fails to separate in floating point");
  }
  return h;
}

std::pair<double, double> distance_bracket(double witness_gap) {
  if (!(witness_gap > 0.0)) throw std::invalid_argument("distance_bracket: gap must be positive");
  return {0.5 * witness_gap, witness_gap};
}

SolveResult solve(const PointSet& s, const Vector& p, const Tolerances& tol,
                  const SolveOptions& options) {
  tol.validate();
  require_dims(s, p);
  if (!p.allFinite()) throw std::invalid_argument("query point has a non-finite coordinate");

  SolveResult out;
  RunStats& stats = out.stats;
  stats.radius = s.radius_about(p);

  Engine engine(s, p, tol.pivot_rule);
  WorkingSet& ws = engine.working_set();
  const Index n = s.count();

  Iterate it;
  std::optional<Index> hint;
  double v_radius = 0.0;
  const Index nearest = s.nearest_index(p);
  if (options.warm_start) {
    it = *options.warm_start;
    if (it.coeffs.size() != n || it.point.size() != s.dim()) {
      throw std::invalid_argument("warm start does not match the point set");
    }
    it.gap = std::sqrt(squared_distance(it.point, p));
  } else {
    it = Iterate::at_vertex(s, p, nearest);
    hint = nearest;
  }
  v_radius = std::sqrt(squared_distance(s.point(nearest), p));
  stats.gap_series.push_back(it.gap);

  auto finish = [&](Certificate cert) {
    stats.finalize_visibility(tol.eps);
    out.certificate = std::move(cert);
    out.final_iterate = it;
    return out;
  };
  auto inconclusive = [&](InconclusiveReason reason) {
    return finish(Inconclusive{reason, it.coeffs, it.point, it.gap});
  };

  CycleWindow window;
  std::int64_t since_refresh = 0;

  for (;;) {
    if (it.gap == 0.0 || it.gap < tol.eps * v_radius) {
      return finish(ApproxSolution{it.coeffs, it.point, it.gap, stats.radius, tol.eps});
    }
    if (options.accept && options.accept(it)) return inconclusive(InconclusiveReason::EarlyExit);
    if (stats.iterations >= tol.max_iters) return inconclusive(InconclusiveReason::MaxIterations);

    const auto pivot = engine.find(it.point, hint, stats.pivot_scans);
    if (!pivot) {
      try {
        const Hyperplane h = separating_hyperplane(s, it.point, p);
        const auto [lo, hi] = distance_bracket(it.gap);
        return finish(Witness{it.coeffs, it.point, p, it.gap, h.normal, h.offset, lo, hi});
      } catch (const std::domain_error&) {
        return inconclusive(InconclusiveReason::NumericalTie);
      }
    }

    auto stepped = ws.step(it, *pivot);
    Index used = *pivot;
    if (!stepped || !(stepped->gap < it.gap)) {
      // Near roundoff a qualifying pivot can fail to move p'; another may still.
      auto alt = engine.find_progress(it, stats.pivot_scans);
      if (!alt) return inconclusive(InconclusiveReason::Stalled);
      used = alt->first;
      stepped = std::move(alt->second);
    }
    Iterate next = std::move(*stepped);
    double angle = std::acos(std::clamp(pivot_angle_cosine(it.point, p, ws.point(used)), -1.0, 1.0));

    if (tol.pivot_rule == PivotRule::StrategyI) {
      const double r = ws.radius_of(used);
      if ((it.gap - next.gap) < 1e-3 * it.gap && it.gap <= r) {
        // Swap roles: p' joins as an auxiliary pivot and the step restarts from v.
        ws.add(it.point, it.coeffs);
        const Iterate from_v = ws.iterate_at(used);
        if (const auto w = engine.find_best(from_v.point, stats.pivot_scans)) {
          if (auto alt = ws.step(from_v, *w); alt && alt->gap < next.gap) {
            next = std::move(*alt);
            used = *w;
            angle = std::asin(std::min(1.0, next.gap / it.gap));
          }
        }
      }
    }

    if (!(next.gap < it.gap)) return inconclusive(InconclusiveReason::Stalled);
    // Progress is judged before the refresh, whose recomputed gap may differ by roundoff.
    if (++since_refresh >= tol.refresh_period) {
      next.refresh(s, p);
      since_refresh = 0;
    }

    if (tol.pivot_rule == PivotRule::StrategyIV) {
      const auto cycling = window.push(used, it.gap, next.gap);
      if (!cycling.empty()) {
        Vector coeffs = Vector::Zero(n);
        for (Index i : cycling) coeffs += ws.iterate_at(i).coeffs;
        coeffs /= static_cast<double>(cycling.size());
        ws.add(s.matrix() * coeffs, coeffs);
      }
    }

    ++stats.iterations;
    if (used >= n) ++stats.auxiliary_pivots;
    stats.gap_series.push_back(next.gap);
    stats.pivot_angle_series.push_back(angle);
    stats.pivot_index_series.push_back(used);
    stats.pivot_radius_series.push_back(ws.radius_of(used));
    // Auxiliary pivots sit near p; the stop test keeps the last radius from S.
    if (used < n) v_radius = ws.radius_of(used);
    hint = used;
    it = std::move(next);
  }
}

BallSystem::BallSystem(PointSet centers, Vector radii, Vector common_point)
    : centers_(std::move(centers)), radii_(std::move(radii)), common_point_(std::move(common_point)) {
  if (radii_.size() != centers_.count()) {
    throw std::invalid_argument("BallSystem: one radius per center required");
  }
  require_dims(centers_, common_point_);
  for (Index i = 0; i < centers_.count(); ++i) {
    if (!(radii_(i) > 0.0)) {
      throw std::invalid_argument("BallSystem: radius " + std::to_string(i) + " is not positive");
    }
    const double d = std::sqrt(squared_distance(centers_.point(i), common_point_));
    if (std::abs(d - radii_(i)) > 1e-9 * (1.0 + radii_(i))) {
      throw std::invalid_argument("BallSystem: p is not on the boundary of ball " +
                                  std::to_string(i));
    }
  }
}

BallSystem BallSystem::through(PointSet centers, Vector common_point) {
  Vector radii(centers.count());
  for (Index i = 0; i < centers.count(); ++i) {
    radii(i) = std::sqrt(squared_distance(centers.point(i), common_point));
  }
  return BallSystem(std::move(centers), std::move(radii), std::move(common_point));
}

BallsResult solve_intersecting_balls(const BallSystem& balls, const Tolerances& tol,
                                     RunStats* stats) {
  const auto result = solve(balls.centers(), balls.common_point(), tol);
  if (stats) *stats = result.stats;
  if (const auto* a = std::get_if<ApproxSolution>(&result.certificate)) {
    return EmptyIntersection{*a};
  }
  if (const auto* w = std::get_if<Witness>(&result.certificate)) {
    const PointSet& c = balls.centers();
    for (Index i = 0; i < c.count(); ++i) {
      if (!(std::sqrt(squared_distance(w->point, c.point(i))) < balls.radii()(i))) {
        return Inconclusive{InconclusiveReason::NumericalTie, w->coeffs, w->point, w->gap};
      }
    }
    return IntersectionPoint{w->point, w->coeffs};
  }
  return std::get<Inconclusive>(result.certificate);
}

} // namespace hullcheck
