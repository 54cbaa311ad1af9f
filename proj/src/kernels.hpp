#pragma once

// Plain left-to-right reductions. The pivot scans and the public predicates
// share these so that both evaluate bit-identical expressions.

#include "hullcheck/geometry.hpp"

namespace hullcheck::kernels {

inline double dot(const double* a, const double* b, Index n) {
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

// sum_i (a_i - c_i) (b_i - c_i)
inline double centered_dot(const double* a, const double* b, const double* c, Index n) {
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) sum += (a[i] - c[i]) * (b[i] - c[i]);
  return sum;
}

// sum_i (x_i - p_i) (x_i + p_i - 2 v_i) = |x - v|^2 - |p - v|^2. The factored
// form keeps the sign reliable when |x - p|^2 is below the rounding of |x|^2.
inline double pivot_margin(const double* x, const double* p, const double* v, Index n) {
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) sum += (x[i] - p[i]) * ((x[i] + p[i]) - 2.0 * v[i]);
  return sum;
}

inline double squared_distance(const double* a, const double* b, Index n) {
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

} // namespace hullcheck::kernels
