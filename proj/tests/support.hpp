#pragma once

#include "hullcheck/geometry.hpp"
#include "hullcheck/random.hpp"

#include <cmath>
#include <initializer_list>
#include <vector>

namespace testing {

using hullcheck::Index;
using hullcheck::PointSet;
using hullcheck::Vector;

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline PointSet points(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> pts;
  for (auto r : rows) pts.emplace_back(r);
  return PointSet::from_points(pts);
}

inline double dist(const Vector& a, const Vector& b) { return (a - b).norm(); }

inline PointSet unit_square() { return points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

} // namespace testing
