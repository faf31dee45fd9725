#include "rmt/airy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rmt/airy_asymptotic.hpp"
#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

using Real = long double;

constexpr Real kAi0 = 0.355028053887817239260063186004183176L;
constexpr Real kMinusAip0 = 0.258819403792806798405183560189203963L;
constexpr Real kPi = 3.141592653589793238462643383279502884L;
constexpr Real kTiny = 1e-22L;

constexpr Real kSeriesLow = -8.0L;
constexpr Real kSeriesHigh = 4.5L;
constexpr Real kAsymptoticHigh = 9.0L;
constexpr Real kBridgeStep = 0.5L;

AiryPairLong maclaurin(Real x) {
  const Real x3 = x * x * x;
  // f, g are the even/odd solutions; Ai = c1 f - c2 g.
  Real f = 1, g = x, fp = 0, gp = 1;
  Real tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
  fp = tfp;
  Real scale = 1;
  for (int k = 0; k < 200; ++k) {
    const Real kk = 3.0L * k;
    tf *= x3 / ((kk + 2) * (kk + 3));
    tg *= x3 / ((kk + 3) * (kk + 4));
    tgp *= x3 / ((kk + 1) * (kk + 3));
    if (k > 0) tfp *= x3 / (kk * (kk + 2));
    f += tf;
    g += tg;
    gp += tgp;
    if (k > 0) fp += tfp;
    scale = std::max({scale, std::abs(f), std::abs(g), std::abs(fp), std::abs(gp)});
    const Real biggest = std::max({std::abs(tf), std::abs(tg), std::abs(tfp), std::abs(tgp)});
    if (k > 2 && biggest < kTiny * scale) break;
  }
  return {kAi0 * f - kMinusAip0 * g, kAi0 * fp - kMinusAip0 * gp};
}

// Even/odd split of sum (-1)^k u_k z^-k and sum (-1)^k v_k z^-k used by the
// oscillatory expansion, truncated at the smallest term.
struct AsymptoticSums {
  Real u_even = 0, u_odd = 0, v_even = 0, v_odd = 0;
};

AsymptoticSums asymptotic_sums(Real zeta) {
  AsymptoticSums s;
  Real u = 1, zpow = 1;
  Real last = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      u *= (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / ((2.0L * k - 1) * 216.0L * k);
      zpow /= zeta;
    }
    const Real v = k == 0 ? 1.0L : -(6.0L * k + 1) / (6.0L * k - 1) * u;
    const Real term_u = u * zpow;
    const Real term_v = v * zpow;
    const Real size = std::max(std::abs(term_u), std::abs(term_v));
    if (size > last) break;
    last = size;
    const Real sign = (k / 2) % 2 == 0 ? 1.0L : -1.0L;
    if (k % 2 == 0) {
      s.u_even += sign * term_u;
      s.v_even += sign * term_v;
    } else {
      s.u_odd += sign * term_u;
      s.v_odd += sign * term_v;
    }
    if (size < kTiny) break;
  }
  return s;
}

AiryPairLong asymptotic_positive(Real x) {
  const auto [ai, aip] = airy_asymptotic_positive<Real>(x, kPi);
  return {ai, aip};
}

AiryPairLong asymptotic_negative(Real x) {
  const Real z = -x;
  const Real root = std::sqrt(z);
  const Real zeta = 2.0L / 3.0L * z * root;
  const AsymptoticSums s = asymptotic_sums(zeta);
  const Real phase = zeta - kPi / 4;
  const Real c = std::cos(phase), sn = std::sin(phase);
  const Real quarter = std::sqrt(root);
  const Real front = 1.0L / std::sqrt(kPi);
  return {front / quarter * (c * s.u_even + sn * s.u_odd),
          front * quarter * (sn * s.v_even - c * s.v_odd)};
}

// Taylor propagation of (Ai, Ai') from x0 to x1 using the derivative
// recurrence d_{m+2} = x d_m + m d_{m-1}.
AiryPairLong taylor_step(Real x0, AiryPairLong at, Real h) {
  constexpr int kTerms = 60;
  Real d[kTerms + 2];
  d[0] = at.ai;
  d[1] = at.aip;
  d[2] = x0 * at.ai;
  for (int m = 1; m + 2 < kTerms + 2; ++m) d[m + 2] = x0 * d[m] + m * d[m - 1];
  Real ai = 0, aip = 0, power = 1;
  for (int m = 0; m < kTerms; ++m) {
    ai += d[m] * power;
    aip += d[m + 1] * power;
    power *= h / (m + 1);
  }
  return {ai, aip};
}

AiryPairLong bridge(Real x) {
  Real x0 = kAsymptoticHigh;
  AiryPairLong v = asymptotic_positive(x0);
  const int steps = static_cast<int>(std::ceil((x0 - x) / kBridgeStep));
  const Real h = (x - x0) / steps;
  for (int i = 0; i < steps; ++i) {
    v = taylor_step(x0, v, h);
    x0 += h;
  }
  return v;
}

}  // namespace

AiryPairLong airy_long(long double x) {
  if (!(std::abs(x) <= 200.0L))
    throw DomainError("airy: |x| must be <= 200, got " + std::to_string(static_cast<double>(x)));
  if (x < kSeriesLow) return asymptotic_negative(x);
  if (x <= kSeriesHigh) return maclaurin(x);
  if (x < kAsymptoticHigh) return bridge(x);
  return asymptotic_positive(x);
}

AiryPair airy(double x) {
  const AiryPairLong v = airy_long(x);
  return {static_cast<double>(v.ai), static_cast<double>(v.aip)};
}

std::vector<double> airy_derivatives(double x, int count) {
  if (count < 2) count = 2;
  const AiryPairLong v = airy_long(x);
  std::vector<long double> d(count);
  d[0] = v.ai;
  d[1] = v.aip;
  for (int m = 0; m + 2 < count; ++m)
    d[m + 2] = x * d[m] + (m > 0 ? m * d[m - 1] : 0.0L);
  return {d.begin(), d.end()};
}

namespace {

// cum(k) and cum(-k) at the integers 0..200, built once.
struct CumulativeAnchors {
  std::vector<double> positive, negative;
  CumulativeAnchors() : positive(201), negative(201) {
    const auto ai = [](double t) { return airy(t).ai; };
    positive[200] = 1.0;
    for (int k = 199; k >= 0; --k) positive[k] = positive[k + 1] - integrate(ai, k, k + 1.0, 1e-12, 0.5);
    negative[0] = 2.0 / 3.0;
    for (int k = 0; k < 200; ++k) negative[k + 1] = negative[k] - integrate(ai, -k - 1.0, -k, 1e-12, 0.5);
  }
};

const CumulativeAnchors& anchors() {
  static const CumulativeAnchors table;
  return table;
}

}  // namespace

double airy_cumulative(double y) {
  if (y > 200.0) throw DomainError("airy_cumulative: y must be <= 200");
  const auto ai = [](double t) { return airy(t).ai; };
  if (y >= 0.0) {
    const int k = static_cast<int>(std::floor(y));
    return anchors().positive[k] + integrate(ai, k, y, 1e-12, 0.5);
  }
  if (y >= -200.0) {
    const int k = static_cast<int>(std::ceil(-y));
    return anchors().negative[k] + integrate(ai, -k, y, 1e-12, 0.5);
  }
  const double z = -y;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  return std::pow(z, -0.75) / std::sqrt(std::numbers::pi) * std::cos(zeta + std::numbers::pi / 4);
}

}  // namespace rmt
