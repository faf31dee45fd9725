#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace rmt {

/// Adaptive 15-point Gauss-Kronrod on [a, b], split into pieces no longer
/// than `piece` so that oscillatory integrands are resolved.
template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-11, double piece = 1.0,
                 unsigned max_depth = 12) {
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  const int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / piece)));
  const double h = (hi - lo) / pieces;
  double sum = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double x0 = lo + i * h;
    const double x1 = i + 1 == pieces ? hi : lo + (i + 1) * h;
    sum += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, x0, x1, max_depth, tol);
  }
  return sign * sum;
}

}  // namespace rmt
