#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "hullcheck/baseline.hpp"

#include <cmath>
#include <stdexcept>

using namespace hullcheck;
using testing::points;
using testing::vec;

TEST_CASE("squared_distance basics") {
  CHECK(squared_distance(vec({0, 0}), vec({0, 0})) == 0.0);
  CHECK(squared_distance(vec({0, 0}), vec({3, 4})) == 25.0);
  CHECK_THROWS_AS(squared_distance(vec({0, 0}), vec({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("squared_distance matches a naive loop bit for bit") {
  SplitMix64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const Vector u = normal_vector(rng, 5);
    const Vector v = normal_vector(rng, 5);
    double naive = 0.0;
    for (int i = 0; i < 5; ++i) naive += (u[i] - v[i]) * (u[i] - v[i]);
    REQUIRE(squared_distance(u, v) == naive);
  }
}

TEST_CASE("pivot_predicate examples") {
  CHECK(pivot_predicate(vec({0, 0}), vec({0.5, 0}), vec({1, 0})));
  CHECK_FALSE(pivot_predicate(vec({0.5, 0.5}), vec({0, 0}), vec({1, 0})));
  CHECK_THROWS_AS(pivot_predicate(vec({0, 0}), vec({0, 0, 0}), vec({1, 0})), std::invalid_argument);
}

TEST_CASE("pivot_predicate agrees with the square-root comparison away from ties") {
  SplitMix64 rng(12);
  int compared = 0;
  for (int k = 0; k < 20000; ++k) {
    const Vector x = normal_vector(rng, 3);
    const Vector p = normal_vector(rng, 3);
    const Vector v = normal_vector(rng, 3);
    const double a = testing::dist(x, v);
    const double b = testing::dist(p, v);
    if (std::abs(a - b) <= 1e-12 * std::max(a, b)) continue;
    ++compared;
    REQUIRE(pivot_predicate(x, p, v) == (a >= b));
  }
  CHECK(compared > 19000);
}

TEST_CASE("strict_pivot_predicate examples") {
  CHECK(strict_pivot_predicate(vec({0, -1}), vec({0, 0}), vec({1, 0})));
  CHECK_FALSE(strict_pivot_predicate(vec({0, -1}), vec({0, 0}), vec({0, -2})));
}

TEST_CASE("a strict pivot is a pivot") {
  SplitMix64 rng(13);
  int strict = 0;
  for (int k = 0; k < 10000; ++k) {
    const Vector x = normal_vector(rng, 3);
    const Vector p = normal_vector(rng, 3);
    const Vector v = normal_vector(rng, 3);
    if (strict_pivot_predicate(x, p, v)) {
      ++strict;
      REQUIRE(pivot_predicate(x, p, v));
    }
  }
  CHECK(strict > 1000);
}

TEST_CASE("project_to_segment examples") {
  auto mid = project_to_segment(vec({0.5, 0}), vec({0, 0}), vec({1, 0}));
  CHECK(mid.alpha == doctest::Approx(0.5));
  CHECK(mid.point.isApprox(vec({0.5, 0})));
  auto end = project_to_segment(vec({2, 0}), vec({0, 0}), vec({1, 0}));
  CHECK(end.alpha == 1.0);
  CHECK(end.point == vec({1, 0}));
  auto degenerate = project_to_segment(vec({2, 0}), vec({1, 1}), vec({1, 1}));
  CHECK(degenerate.alpha == 0.0);
  CHECK(degenerate.point == vec({1, 1}));
}

TEST_CASE("project_to_segment beats dense sampling and is idempotent") {
  SplitMix64 rng(14);
  for (int k = 0; k < 50; ++k) {
    const Vector p = normal_vector(rng, 3);
    const Vector a = normal_vector(rng, 3);
    const Vector b = normal_vector(rng, 3);
    const auto proj = project_to_segment(p, a, b);
    const double d = testing::dist(proj.point, p);
    for (int s = 0; s <= 10000; ++s) {
      const double t = s / 10000.0;
      REQUIRE(d <= testing::dist((1 - t) * a + t * b, p) + 1e-12);
    }
    const auto again = project_to_segment(proj.point, a, b);
    CHECK(testing::dist(again.point, proj.point) <= 1e-12 * (1 + proj.point.norm()));
  }
}

TEST_CASE("project_to_segment alpha is optimal on a fine grid") {
  SplitMix64 rng(15);
  for (int k = 0; k < 5; ++k) {
    const Vector p = normal_vector(rng, 2);
    const Vector a = normal_vector(rng, 2);
    const Vector b = normal_vector(rng, 2);
    const auto proj = project_to_segment(p, a, b);
    double best_t = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= 100000; ++s) {
      const double t = s / 100000.0;
      const double d = testing::dist((1 - t) * a + t * b, p);
      if (d < best) {
        best = d;
        best_t = t;
      }
    }
    CHECK(std::abs(proj.alpha - best_t) <= 1e-5);
  }
}

TEST_CASE("project_to_triangle examples") {
  const Vector a = vec({0, 0}), b = vec({3, 0}), c = vec({0, 3});
  const auto centroid = project_to_triangle(vec({1, 1}), a, b, c);
  CHECK(centroid.point.isApprox(vec({1, 1})));
  for (double w : centroid.barycentric) CHECK(w == doctest::Approx(1.0 / 3.0));

  const Vector p = vec({1.5, -2});
  const auto edge = project_to_triangle(p, a, b, c);
  const auto seg = project_to_segment(p, a, b);
  CHECK(testing::dist(edge.point, seg.point) <= 1e-12);

  // Collinear triangle falls back to the best edge.
  const auto flat = project_to_triangle(vec({0.5, 1}), vec({0, 0}), vec({1, 0}), vec({2, 0}));
  CHECK(flat.point.isApprox(vec({0.5, 0})));
}

TEST_CASE("project_to_triangle agrees with the face-enumeration oracle") {
  SplitMix64 rng(16);
  for (int k = 0; k < 300; ++k) {
    const Vector a = normal_vector(rng, 4), b = normal_vector(rng, 4), c = normal_vector(rng, 4);
    const Vector p = 2.0 * normal_vector(rng, 4);
    const auto tri = project_to_triangle(p, a, b, c);
    Matrix cols(4, 3);
    cols << a, b, c;
    const auto oracle = oracle_nearest(PointSet(cols), p);
    REQUIRE(testing::dist(tri.point, p) == doctest::Approx(oracle.distance).epsilon(1e-9));
    const Vector rebuilt = tri.barycentric[0] * a + tri.barycentric[1] * b + tri.barycentric[2] * c;
    REQUIRE(testing::dist(rebuilt, tri.point) <= 1e-9);
    double sum = 0.0;
    for (double w : tri.barycentric) {
      REQUIRE(w >= 0.0);
      sum += w;
    }
    REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("PointSet validation and queries") {
  CHECK_THROWS_AS(PointSet(Matrix(0, 0)), std::invalid_argument);
  Matrix bad(2, 1);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(PointSet{bad}, std::invalid_argument);
  CHECK_THROWS_AS(PointSet::from_points({{1, 2}, {3}}), std::invalid_argument);

  const PointSet s = points({{1, 0}, {0, 1}, {-1, 0}});
  CHECK(s.dim() == 2);
  CHECK(s.count() == 3);
  CHECK(s.radius_about(vec({0, 0})) == 1.0);
  CHECK(s.nearest_index(vec({0, 0})) == 0); // all tied: lowest index
  CHECK(s.nearest_index(vec({-0.9, 0})) == 2);
}

TEST_CASE("Tolerances validation") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.eps = 1.0;
  CHECK_THROWS(t.validate());
  t = Tolerances{};
  t.k_faces = 1;
  CHECK_THROWS(t.validate());
  t = Tolerances{};
  t.k_faces = 5;
  CHECK_THROWS(t.validate(4));
  CHECK_NOTHROW(t.validate(5));
}

TEST_CASE("pivot rule names round-trip") {
  for (auto r : {PivotRule::FirstIndex, PivotRule::BestAngle, PivotRule::StrictFirst,
                 PivotRule::StrictBest, PivotRule::StrategyI, PivotRule::StrategyIV}) {
    CHECK(parse_pivot_rule(to_string(r)) == r);
  }
  CHECK_THROWS_AS(parse_pivot_rule("nope"), std::invalid_argument);
}

TEST_CASE("Iterate refresh clamps and renormalises") {
  const PointSet s = points({{0, 0}, {2, 0}});
  Iterate it = Iterate::from_coeffs(s, vec({1, 0}), vec({3, 1}));
  CHECK(it.coeffs.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(it.point.isApprox(vec({0.5, 0})));
  CHECK(it.gap == doctest::Approx(0.5));
  it.coeffs = vec({-1e-17, 1.0});
  it.refresh(s, vec({1, 0}));
  CHECK(it.coeffs(0) == 0.0);
}
