#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace rmt {

/// Ai and Ai' for large positive x from the exponentially decaying
/// expansion, summed to its smallest term. T may be any floating type with
/// sqrt/exp/abs found by ADL or in std.
template <typename T>
std::pair<T, T> airy_asymptotic_positive(T x, T pi) {
  using std::abs;
  using std::exp;
  using std::sqrt;
  const T root = sqrt(x);
  const T zeta = T(2) / T(3) * x * root;
  T sum_u = 0, sum_v = 0, u = 1, zpow = 1;
  T last = 0;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) {
      u *= T((6 * k - 5) * (6 * k - 3)) * T(6 * k - 1) / (T(2 * k - 1) * T(216) * T(k));
      zpow /= zeta;
    }
    const T v = k == 0 ? T(1) : -T(6 * k + 1) / T(6 * k - 1) * u;
    const T size = std::max(abs(u), abs(v)) * zpow;
    if (k > 0 && size > last) break;
    last = size;
    const T sign = k % 2 == 0 ? T(1) : T(-1);
    sum_u += sign * u * zpow;
    sum_v += sign * v * zpow;
    if (size == T(0)) break;
  }
  const T quarter = sqrt(root);
  const T front = exp(-zeta) / (T(2) * sqrt(pi));
  return {front / quarter * sum_u, -front * quarter * sum_v};
}

}  // namespace rmt
