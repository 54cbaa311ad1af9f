#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "hullcheck/baseline.hpp"
#include "hullcheck/instances.hpp"
#include "hullcheck/solver.hpp"

#include <cmath>

using namespace hullcheck;
using testing::points;
using testing::vec;

namespace {

Tolerances tol_with(double eps, PivotRule rule = PivotRule::FirstIndex) {
  Tolerances t;
  t.eps = eps;
  t.pivot_rule = rule;
  return t;
}

bool any_pivot_by_distance(const PointSet& s, const Vector& x, const Vector& p, bool& near_tie) {
  bool any = false;
  near_tie = false;
  for (Index i = 0; i < s.count(); ++i) {
    const double a = testing::dist(x, s.point(i));
    const double b = testing::dist(p, s.point(i));
    if (std::abs(a - b) <= 1e-12 * (1 + b)) near_tie = true;
    if (a >= b) any = true;
  }
  return any;
}

} // namespace

TEST_CASE("find_pivot examples") {
  const PointSet s = points({{1, 0}, {0, 1}});
  CHECK(find_pivot(vec({1, 0}), vec({0.5, 0.5}), s, PivotRule::FirstIndex) == Index{1});
  CHECK_FALSE(find_pivot(vec({0.5, 0.5}), vec({0, 0}), s, PivotRule::FirstIndex).has_value());
  CHECK_FALSE(find_pivot(vec({0.5, 0.5}), vec({0, 0}), s, PivotRule::BestAngle).has_value());
}

TEST_CASE("find_pivot returns none exactly when the exhaustive scan finds no pivot") {
  SplitMix64 rng(21);
  for (int k = 0; k < 1000; ++k) {
    const Index m = 1 + static_cast<Index>(rng.below(4));
    const Index n = 1 + static_cast<Index>(rng.below(8));
    Matrix cols(m, n);
    for (Index j = 0; j < n; ++j) cols.col(j) = normal_vector(rng, m);
    const PointSet s(cols);
    const Vector x = s.matrix() * dirichlet(rng, n);
    const Vector p = 1.5 * normal_vector(rng, m);
    bool tie = false;
    const bool expected = any_pivot_by_distance(s, x, p, tie);
    if (tie) continue;
    for (auto rule : {PivotRule::FirstIndex, PivotRule::BestAngle, PivotRule::StrictFirst,
                      PivotRule::StrictBest}) {
      REQUIRE(find_pivot(x, p, s, rule).has_value() == expected);
    }
  }
}

TEST_CASE("BestAngle and StrictBest pick the smallest angle among their candidates") {
  SplitMix64 rng(22);
  for (int k = 0; k < 500; ++k) {
    const Matrix cols = [&] {
      Matrix c(3, 8);
      for (Index j = 0; j < 8; ++j) c.col(j) = normal_vector(rng, 3);
      return c;
    }();
    const PointSet s(cols);
    const Vector x = s.matrix() * dirichlet(rng, 8);
    const Vector p = s.matrix() * dirichlet(rng, 8);
    double best_any = -2.0, best_strict = -2.0;
    for (Index i = 0; i < 8; ++i) {
      const Vector v = s.point(i);
      if (testing::dist(v, x) == 0.0) continue;
      const double c = pivot_angle_cosine(x, p, v);
      if (pivot_predicate(x, p, v)) best_any = std::max(best_any, c);
      if (strict_pivot_predicate(x, p, v)) best_strict = std::max(best_strict, c);
    }
    const auto b = find_pivot(x, p, s, PivotRule::BestAngle);
    if (b) REQUIRE(pivot_angle_cosine(x, p, s.point(*b)) == best_any);
    const auto sb = find_pivot(x, p, s, PivotRule::StrictBest);
    if (sb && best_strict > -2.0) {
      REQUIRE(pivot_angle_cosine(x, p, s.point(*sb)) == best_strict);
      REQUIRE(best_strict <= best_any);
    }
  }
}

TEST_CASE("triangle_step examples") {
  const PointSet s = points({{0, 0}, {1, 0}});
  const Vector p = vec({0.5, 0});
  const Iterate start = Iterate::at_vertex(s, p, 0);
  const auto next = triangle_step(start, 1, p, s);
  REQUIRE(next);
  CHECK(next->point.isApprox(vec({0.5, 0})));
  CHECK(next->coeffs.isApprox(vec({0.5, 0.5})));
  CHECK(next->gap == 0.0);

  // v_j == p' is a degenerate segment.
  const PointSet dup = points({{1, 0}, {1, 0}});
  CHECK_FALSE(triangle_step(Iterate::at_vertex(dup, p, 0), 1, p, dup).has_value());
}

TEST_CASE("a triangle step never beats the worst-case reduction bound") {
  SplitMix64 rng(23);
  int checked = 0;
  for (int k = 0; k < 5000; ++k) {
    const Instance inst = feasible_instance(3, 6, derive_seed(23, static_cast<std::uint64_t>(k)));
    const Iterate it = Iterate::from_coeffs(inst.points, inst.query, dirichlet(rng, 6));
    const auto j = find_pivot(it.point, inst.query, inst.points, PivotRule::FirstIndex);
    if (!j) continue;
    const double r = testing::dist(inst.points.point(*j), inst.query);
    if (!(it.gap <= r)) continue;
    const auto next = triangle_step(it, *j, inst.query, inst.points);
    REQUIRE(next);
    ++checked;
    const double bound = it.gap * std::sqrt(1 - it.gap * it.gap / (4 * r * r));
    REQUIRE(next->gap <= bound * (1 + 1e-12));
    REQUIRE(next->coeffs.minCoeff() >= 0.0);
    REQUIRE(next->coeffs.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(checked > 1000);
}

TEST_CASE("strict-pivot step at a right angle attains delta r / sqrt(r^2 + delta^2)") {
  for (double delta : {0.1, 0.5, 1.0, 3.0}) {
    for (double r : {0.2, 1.0, 2.5}) {
      const PointSet s = points({{0, -delta}, {r, 0}});
      const Vector p = vec({0, 0});
      const Iterate it = Iterate::at_vertex(s, p, 0);
      REQUIRE(strict_pivot_predicate(it.point, p, s.point(1)));
      const auto next = triangle_step(it, 1, p, s);
      REQUIRE(next);
      CHECK(std::abs(next->gap - delta * r / std::sqrt(r * r + delta * delta)) <= 1e-9);
    }
  }
}

TEST_CASE("solve: square with p at the origin") {
  const PointSet s = points({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  const auto res = solve(s, vec({0, 0}), tol_with(1e-3));
  const auto* a = std::get_if<ApproxSolution>(&res.certificate);
  REQUIRE(a);
  CHECK(a->gap < 1e-3 * a->radius);
  CHECK(res.stats.iterations <= 48e6);
  CHECK(testing::dist(s.matrix() * a->coeffs, a->point) <= 1e-9);
}

TEST_CASE("solve: two points with p outside gives a witness bracketing the distance") {
  const PointSet s = points({{1, 0}, {0, 1}});
  const auto res = solve(s, vec({0, 0}), tol_with(1e-3));
  const auto* w = std::get_if<Witness>(&res.certificate);
  REQUIRE(w);
  const double delta = oracle_nearest(s, vec({0, 0})).distance;
  CHECK(delta == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(w->distance_lo <= delta);
  CHECK(delta <= w->distance_hi + 1e-15);
  CHECK(w->normal.isApprox(vec({-0.5, -0.5})));
  CHECK(w->offset == doctest::Approx(-0.25));
}

TEST_CASE("solve: singleton equal to p stops at iteration 0") {
  const PointSet s = points({{2, 3}});
  const auto res = solve(s, vec({2, 3}), tol_with(1e-3));
  const auto* a = std::get_if<ApproxSolution>(&res.certificate);
  REQUIRE(a);
  CHECK(a->gap == 0.0);
  CHECK(res.stats.iterations == 0);
}

TEST_CASE("solve reports max-iters as inconclusive") {
  const Instance inst = feasible_instance(5, 40, 99);
  Tolerances t = tol_with(1e-9);
  t.max_iters = 3;
  const auto res = solve(inst.points, inst.query, t);
  const auto* inc = std::get_if<Inconclusive>(&res.certificate);
  REQUIRE(inc);
  CHECK(inc->reason == InconclusiveReason::MaxIterations);
  CHECK(res.stats.iterations == 3);
}

TEST_CASE("solve is deterministic") {
  const Instance inst = feasible_instance(4, 30, 5);
  for (auto rule : {PivotRule::FirstIndex, PivotRule::BestAngle, PivotRule::StrategyI, PivotRule::StrategyIV}) {
    const auto a = solve(inst.points, inst.query, tol_with(1e-4, rule));
    const auto b = solve(inst.points, inst.query, tol_with(1e-4, rule));
    CHECK(a.stats.gap_series == b.stats.gap_series);
    CHECK(a.stats.pivot_index_series == b.stats.pivot_index_series);
  }
}

TEST_CASE("trace invariants: monotone gaps, contraction, geometric rate") {
  for (auto rule : {PivotRule::FirstIndex, PivotRule::BestAngle, PivotRule::StrictFirst, PivotRule::StrictBest}) {
    for (std::uint64_t k = 0; k < 40; ++k) {
      const Instance inst = feasible_instance(3, 10, derive_seed(31, k));
      const Tolerances t = tol_with(1e-3, rule);
      const auto res = solve(inst.points, inst.query, t);
      REQUIRE(std::holds_alternative<ApproxSolution>(res.certificate));
      const auto& st = res.stats;
      const double R = st.radius;
      for (std::size_t i = 0; i + 1 < st.gap_series.size(); ++i) {
        const double d = st.gap_series[i];
        const double dn = st.gap_series[i + 1];
        REQUIRE(dn < d);
        if (d <= st.pivot_radius_series[i]) {
          REQUIRE(dn <= d * std::sqrt(1 - d * d / (4 * R * R)) * (1 + 1e-12));
        }
      }
      // delta_k <= nu^k delta_0 over the steps that count toward nu.
      const double nu = st.observed_nu;
      REQUIRE(nu > 0.0);
      REQUIRE(nu <= 1.0);
      REQUIRE(st.observed_c == doctest::Approx(1 / (nu * nu) - 1));
      for (std::size_t i = 1; i < st.gap_series.size(); ++i) {
        if (st.gap_series[i - 1] < t.eps * R) break;
        REQUIRE(st.gap_series[i] <= std::pow(nu, static_cast<double>(i)) * st.gap_series[0] * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("certificates agree with the oracle on small instances") {
  int witnesses = 0, approx = 0;
  for (std::uint64_t k = 0; k < 300; ++k) {
    SplitMix64 rng(derive_seed(41, k));
    const Index m = 1 + static_cast<Index>(rng.below(3));
    const Index n = 1 + static_cast<Index>(rng.below(6));
    Matrix cols(m, n);
    for (Index j = 0; j < n; ++j) cols.col(j) = normal_vector(rng, m);
    const PointSet s(cols);
    const Vector p = normal_vector(rng, m);
    const auto res = solve(s, p, tol_with(1e-3));
    const auto oracle = oracle_nearest(s, p);
    if (const auto* w = std::get_if<Witness>(&res.certificate)) {
      ++witnesses;
      REQUIRE(oracle_membership(s, p, 0.0) == Membership::Outside);
      REQUIRE(w->distance_lo <= oracle.distance * (1 + 1e-12));
      REQUIRE(oracle.distance <= w->distance_hi * (1 + 1e-12));
      REQUIRE(separates({w->normal, w->offset}, s, p));
    } else if (const auto* a = std::get_if<ApproxSolution>(&res.certificate)) {
      ++approx;
      REQUIRE(testing::dist(s.matrix() * a->coeffs, a->point) <= 1e-9 * (1 + a->point.norm()));
      REQUIRE(a->gap < a->eps_used * a->radius);
      // Contrapositive: an approximate solution rules out distances above eps R.
      REQUIRE(oracle.distance <= a->gap * (1 + 1e-12) + 1e-12);
    }
  }
  CHECK(witnesses > 50);
  CHECK(approx > 10);
}

TEST_CASE("separating_hyperplane") {
  const PointSet s = points({{1, 0}, {0, 1}});
  const Vector p = vec({0, 0});
  const Vector w = vec({0.5, 0.5});
  const Hyperplane h = separating_hyperplane(s, w, p);
  CHECK(h.normal.isApprox(vec({-0.5, -0.5})));
  CHECK(h.offset == -0.25);
  CHECK(h.normal.dot(s.point(0)) < h.offset);
  CHECK(h.normal.dot(p) > h.offset);
  CHECK(std::abs(h.normal.dot(0.5 * (p + w)) - h.offset) <= 1e-9);
  CHECK_THROWS_AS(separating_hyperplane(s, vec({1, 0}), p), std::domain_error);
}

TEST_CASE("witness hyperplanes separate on constructed infeasible instances") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const Instance inst = infeasible_instance(3, 6, derive_seed(51, k));
    const auto res = solve(inst.points, inst.query, tol_with(1e-3));
    const auto* w = std::get_if<Witness>(&res.certificate);
    REQUIRE(w);
    REQUIRE(separates({w->normal, w->offset}, inst.points, inst.query));
    REQUIRE(std::abs(w->normal.dot(0.5 * (inst.query + w->point)) - w->offset) <= 1e-9);
  }
}

TEST_CASE("distance_bracket") {
  const auto [lo, hi] = distance_bracket(std::sqrt(0.5));
  CHECK(lo == doctest::Approx(0.35355).epsilon(1e-4));
  CHECK(hi == doctest::Approx(0.70711).epsilon(1e-4));
  CHECK(distance_bracket(2.0) == std::pair<double, double>{1.0, 2.0});
  CHECK_THROWS_AS(distance_bracket(0.0), std::invalid_argument);
}

TEST_CASE("distance bracket holds against the oracle on 500 infeasible instances") {
  for (std::uint64_t k = 0; k < 500; ++k) {
    SplitMix64 rng(derive_seed(61, k));
    const Index m = 1 + static_cast<Index>(rng.below(3));
    const Index n = 1 + static_cast<Index>(rng.below(6));
    const Instance inst = infeasible_instance(m, n, derive_seed(62, k));
    const auto res = solve(inst.points, inst.query, tol_with(1e-3));
    const auto* w = std::get_if<Witness>(&res.certificate);
    REQUIRE(w);
    const double delta = oracle_nearest(inst.points, inst.query).distance;
    REQUIRE(w->distance_lo <= delta * (1 + 1e-12));
    REQUIRE(delta <= w->distance_hi * (1 + 1e-12));
  }
}

TEST_CASE("intersecting balls") {
  SUBCASE("two balls through the origin meet near (1/2, 1/2)") {
    const BallSystem balls(points({{1, 0}, {0, 1}}), vec({1, 1}), vec({0, 0}));
    const auto r = solve_intersecting_balls(balls, tol_with(1e-3));
    const auto* q = std::get_if<IntersectionPoint>(&r);
    REQUIRE(q);
    CHECK(testing::dist(q->point, vec({0.5, 0.5})) < 1e-9);
  }
  SUBCASE("p inside a triangle: no witnesses, empty intersection") {
    const auto balls = BallSystem::through(points({{0, 0}, {4, 0}, {1, 3}}), vec({1.5, 1}));
    CHECK(std::holds_alternative<EmptyIntersection>(solve_intersecting_balls(balls, tol_with(1e-3))));
  }
  SUBCASE("construction rejects radii that miss p") {
    CHECK_THROWS_AS(BallSystem(points({{1, 0}}), vec({2}), vec({0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(BallSystem(points({{1, 0}, {0, 1}}), vec({1}), vec({0, 0})), std::invalid_argument);
  }
  SUBCASE("returned intersection points satisfy every strict inequality") {
    for (std::uint64_t k = 0; k < 100; ++k) {
      const Instance inst = infeasible_instance(2, 5, derive_seed(71, k));
      const auto balls = BallSystem::through(inst.points, inst.query);
      RunStats stats;
      const auto r = solve_intersecting_balls(balls, tol_with(1e-3), &stats);
      const auto* q = std::get_if<IntersectionPoint>(&r);
      REQUIRE(q);
      CHECK(stats.iterations >= 0);
      for (Index i = 0; i < inst.points.count(); ++i) {
        REQUIRE(testing::dist(q->point, inst.points.point(i)) < balls.radii()(i));
      }
    }
  }
}

TEST_CASE("warm start and accept hook") {
  const Instance inst = feasible_instance(3, 12, 77);
  const auto first = solve(inst.points, inst.query, tol_with(0.1));
  SolveOptions opts;
  opts.warm_start = first.final_iterate;
  const auto second = solve(inst.points, inst.query, tol_with(1e-4), opts);
  CHECK(second.stats.gap_series.front() == first.stats.gap_series.back());
  CHECK(std::holds_alternative<ApproxSolution>(second.certificate));

  SolveOptions stop;
  stop.accept = [](const Iterate&) { return true; };
  const auto third = solve(inst.points, inst.query, tol_with(1e-4), stop);
  const auto* inc = std::get_if<Inconclusive>(&third.certificate);
  REQUIRE(inc);
  CHECK(inc->reason == InconclusiveReason::EarlyExit);
}
