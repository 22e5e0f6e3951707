#pragma once

#include <cmath>
#include <utility>

#include "weylfluid/errors.hpp"
#include "weylfluid/field.hpp"

namespace weylfluid::linalg {

/// Relative conditioning floor below which a metric counts as singular.
inline constexpr double kSingularFloor = 1e-13;

/// Determinant and inverse of an m×m matrix by Gauss–Jordan elimination with
/// partial pivoting on the plain values. Works for double and Jet entries.
template <class S>
S invert(const Components<S>& a, Components<S>& inv) {
  const int m = a.dim;
  Components<S> work = a;
  inv = Components<S>(m, 2);
  for (int i = 0; i < m; ++i) inv(i, i) = S(1.0);
  S det(1.0);
  double scale = 0.0;
  for (int k = 0; k < a.size(); ++k) scale = std::max(scale, std::abs(math::value(a.c[k])));
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(math::value(work(r, col))) > std::abs(math::value(work(pivot, col)))) pivot = r;
    if (!(std::abs(math::value(work(pivot, col))) > kSingularFloor * scale))
      throw Error(ErrorKind::singular_metric, "metric determinant below conditioning floor");
    if (pivot != col) {
      for (int c = 0; c < m; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
      det = -det;
    }
    const S p = work(col, col);
    det = det * p;
    const S rp = S(1.0) / p;
    for (int c = 0; c < m; ++c) {
      work(col, c) = work(col, c) * rp;
      inv(col, c) = inv(col, c) * rp;
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const S f = work(r, col);
      for (int c = 0; c < m; ++c) {
        work(r, c) = work(r, c) - f * work(col, c);
        inv(r, c) = inv(r, c) - f * inv(col, c);
      }
    }
  }
  return det;
}

}  // namespace weylfluid::linalg
