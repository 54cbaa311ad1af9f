#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "hullcheck/baseline.hpp"
#include "hullcheck/instances.hpp"

#include <cmath>

using namespace hullcheck;
using testing::points;
using testing::vec;

namespace {

GreedyState state_from(const PointSet& s, const Vector& p, const Vector& x) {
  GreedyState st;
  st.x = x;
  st.point = s.matrix() * x;
  st.objective = (st.point - p).squaredNorm();
  return st;
}

double objective(const PointSet& s, const Vector& p, const Vector& x) {
  return (s.matrix() * x - p).squaredNorm();
}

} // namespace

TEST_CASE("greedy_step: one exact step") {
  const PointSet s = points({{1, 0}, {0, 1}});
  const Vector p = vec({0, 1});
  const auto step = greedy_step(GreedyState::at_vertex(s, p, 0), s, p);
  CHECK(step.coordinate == 1);
  CHECK(step.alpha == 1.0);
  CHECK(step.state.x == vec({0, 1}));
  CHECK(step.state.objective == 0.0);
}

TEST_CASE("greedy gradient matches central finite differences") {
  SplitMix64 rng(301);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = feasible_instance(4, 7, derive_seed(301, static_cast<std::uint64_t>(k)));
    const Vector x = dirichlet(rng, 7);
    const GreedyState st = state_from(inst.points, inst.query, x);
    const Vector g = greedy_gradient(st, inst.points, inst.query);
    const double h = 1e-6;
    for (Index i = 0; i < 7; ++i) {
      Vector up = x, down = x;
      up(i) += h;
      down(i) -= h;
      const double fd = (objective(inst.points, inst.query, up) - objective(inst.points, inst.query, down)) / (2 * h);
      REQUIRE(std::abs(fd - g(i)) <= 1e-6 * std::max(1.0, std::abs(g(i))));
    }
  }
}

TEST_CASE("greedy line search is optimal and the objective never increases") {
  for (std::uint64_t k = 0; k < 100; ++k) {
    const Instance inst = feasible_instance(3, 10, derive_seed(302, k));
    GreedyState st = GreedyState::at_vertex(inst.points, inst.query, 0);
    for (int it = 0; it < 50; ++it) {
      const auto step = greedy_step(st, inst.points, inst.query);
      REQUIRE(step.state.objective <= st.objective * (1 + 1e-12) + 1e-300);
      REQUIRE(step.state.x.minCoeff() >= 0.0);
      REQUIRE(std::abs(step.state.x.sum() - 1.0) <= 1e-12);
      Vector e = Vector::Zero(10);
      e(step.coordinate) = 1.0;
      for (double d : {-1e-4, 1e-4}) {
        const double a = step.alpha + d;
        if (a < 0.0 || a > 1.0) continue;
        const Vector x = st.x + a * (e - st.x);
        REQUIRE(objective(inst.points, inst.query, x) >= step.state.objective * (1 - 1e-12));
      }
      st = step.state;
    }
  }
}

TEST_CASE("greedy_solve certificates") {
  Tolerances tol;
  tol.eps = 1e-3;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const bool feasible = k % 2 == 0;
    const Instance inst = feasible ? feasible_instance(3, 8, derive_seed(303, k))
                                   : infeasible_instance(3, 6, derive_seed(303, k));
    const auto res = greedy_solve(inst.points, inst.query, tol);
    if (const auto* a = std::get_if<ApproxSolution>(&res.certificate)) {
      REQUIRE(feasible);
      REQUIRE(a->gap < tol.eps * a->radius);
    } else if (const auto* w = std::get_if<Witness>(&res.certificate)) {
      REQUIRE_FALSE(feasible);
      REQUIRE(separates({w->normal, w->offset}, inst.points, inst.query));
    } else {
      FAIL("greedy returned inconclusive");
    }
    const auto& g = res.stats.gap_series;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) REQUIRE(g[i + 1] <= g[i]);
  }
}

TEST_CASE("triangle traces respect the 48 R^2 / k envelope; greedy is recorded alongside") {
  Tolerances tol;
  tol.eps = 1e-3;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const Instance inst = feasible_instance(5, 30, derive_seed(304, k));
    const auto tri = solve(inst.points, inst.query, tol);
    const auto greedy = greedy_solve(inst.points, inst.query, tol);
    const double R = tri.stats.radius;
    const auto& g = tri.stats.gap_series;
    for (std::size_t i = 1; i < g.size(); ++i) {
      REQUIRE(g[i] * g[i] < 48 * R * R / static_cast<double>(i));
    }
    REQUIRE(std::holds_alternative<ApproxSolution>(greedy.certificate));
    REQUIRE(greedy.stats.iterations >= 0);
  }
}

TEST_CASE("oracle_nearest examples") {
  const auto seg = oracle_nearest(points({{1, 0}, {0, 1}}), vec({0, 0}));
  CHECK(seg.point.isApprox(vec({0.5, 0.5})));
  CHECK(seg.distance == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(seg.support == std::vector<Index>{0, 1});

  const auto inside = oracle_nearest(points({{0, 0}, {3, 0}, {0, 3}}), vec({1, 1}));
  CHECK(inside.distance <= 1e-12);
  CHECK(inside.point.isApprox(vec({1, 1})));

  Matrix big(2, 13);
  big.setRandom();
  CHECK_THROWS_AS(oracle_nearest(PointSet(big), vec({0, 0})), std::invalid_argument);
  Matrix tall(7, 2);
  tall.setRandom();
  CHECK_THROWS_AS(oracle_nearest(PointSet(tall), Vector::Zero(7)), std::invalid_argument);
}

TEST_CASE("oracle_nearest agrees with project_to_triangle on 3-point instances") {
  SplitMix64 rng(305);
  for (int k = 0; k < 500; ++k) {
    const Index m = 2 + static_cast<Index>(rng.below(3));
    const Vector a = normal_vector(rng, m), b = normal_vector(rng, m), c = normal_vector(rng, m);
    const Vector p = 1.5 * normal_vector(rng, m);
    Matrix cols(m, 3);
    cols << a, b, c;
    const double oracle = oracle_nearest(PointSet(cols), p).distance;
    const double tri = testing::dist(project_to_triangle(p, a, b, c).point, p);
    REQUIRE(std::abs(oracle - tri) <= 1e-9 * (1 + tri));
  }
}

TEST_CASE("oracle_nearest is never beaten by random simplex samples") {
  SplitMix64 rng(306);
  for (int k = 0; k < 20; ++k) {
    const Instance inst = infeasible_instance(3, 6, derive_seed(306, static_cast<std::uint64_t>(k)));
    const auto nearest = oracle_nearest(inst.points, inst.query);
    const double oracle = nearest.distance;
    REQUIRE(oracle == doctest::Approx(inst.distance).epsilon(1e-9));
    const Index t = static_cast<Index>(nearest.support.size());
    double sampled = std::numeric_limits<double>::infinity();
    double on_face = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 50000; ++s) {
      sampled = std::min(sampled, testing::dist(inst.points.matrix() * dirichlet(rng, 6), inst.query));
      // Samples restricted to the support face approach the oracle value.
      const Vector w = dirichlet(rng, t);
      Vector x = Vector::Zero(inst.points.dim());
      for (Index i = 0; i < t; ++i) x += w(i) * inst.points.point(nearest.support[static_cast<std::size_t>(i)]);
      on_face = std::min(on_face, testing::dist(x, inst.query));
    }
    REQUIRE(oracle <= sampled * (1 + 1e-12));
    REQUIRE(oracle <= on_face * (1 + 1e-12));
    CHECK(on_face - oracle < 1e-2 * (1 + oracle));
  }
}

TEST_CASE("oracle_membership") {
  const PointSet tri = points({{0, 0}, {3, 0}, {0, 3}});
  CHECK(oracle_membership(tri, vec({1, 1}), 1e-6) == Membership::Inside);
  for (Index i = 0; i < 3; ++i) {
    CHECK(oracle_membership(tri, Vector(tri.point(i)), 0.0) == Membership::Inside);
  }
  // Push p off the facet x + y = 3 along its outward normal.
  const double margin = 1e-3;
  const Vector facet_mid = vec({1.5, 1.5});
  const Vector normal = vec({1, 1}).normalized();
  const Vector out = facet_mid + 2 * margin * normal;
  const auto nearest = oracle_nearest(tri, out);
  CHECK(nearest.support == std::vector<Index>{1, 2});
  CHECK(oracle_membership(tri, out, margin) == Membership::Outside);
  CHECK(oracle_membership(tri, facet_mid + 0.5 * margin * normal, margin) == Membership::Ambiguous);
  CHECK(to_string(Membership::Ambiguous) == "ambiguous");
}
