#include "rmt/tracy_widom.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "rmt/airy_asymptotic.hpp"
#include "rmt/errors.hpp"

namespace rmt {

namespace {

using Quad = boost::multiprecision::float128;

constexpr double kBlowUp = 1e6;
constexpr double kMatch = 16.0;  // q - Ai is below quad precision here
constexpr double kMaxStep = 0.02;
constexpr int kOrder = 30;

// q, q', I, I', J at one abscissa.
struct PainleveState {
  Quad s, q, qp, I, Ip, J;
};

// One Taylor step of length h for q'' = s q + 2 q^3, I'' = q^2, J' = -q.
// Returns false when the truncation estimate exceeds tol.
bool taylor_step(PainleveState& st, Quad h, Quad tol) {
  std::array<Quad, kOrder + 1> a{}, b{}, c{}, ic{}, jc{};
  a[0] = st.q;
  a[1] = st.qp;
  ic[0] = st.I;
  ic[1] = st.Ip;
  jc[0] = st.J;
  for (int k = 0; k + 2 <= kOrder; ++k) {
    Quad bk = 0, ck = 0;
    for (int m = 0; m <= k; ++m) bk += a[m] * a[k - m];
    b[k] = bk;
    for (int m = 0; m <= k; ++m) ck += a[m] * b[k - m];
    c[k] = ck;
    const Quad denom = Quad((k + 1) * (k + 2));
    a[k + 2] = (st.s * a[k] + (k > 0 ? a[k - 1] : Quad(0)) + 2 * c[k]) / denom;
    ic[k + 2] = b[k] / denom;
    jc[k + 1] = -a[k] / (k + 1);
  }
  jc[kOrder] = -a[kOrder - 1] / kOrder;
  using boost::multiprecision::abs;
  using boost::multiprecision::pow;
  const Quad scale = std::max(Quad(1), abs(st.q));
  const Quad tail = abs(a[kOrder]) * pow(abs(h), kOrder) + abs(a[kOrder - 1]) * pow(abs(h), kOrder - 1);
  if (tail > tol * scale) return false;
  Quad q = 0, qp = 0, I = 0, Ip = 0, J = 0;
  for (int k = kOrder; k >= 0; --k) {
    q = q * h + a[k];
    I = I * h + ic[k];
    J = J * h + jc[k];
    if (k > 0) {
      qp = qp * h + k * a[k];
      Ip = Ip * h + k * ic[k];
    }
  }
  st = {st.s + h, q, qp, I, Ip, J};
  return true;
}

void advance_to(PainleveState& st, Quad target, Quad tol) {
  Quad h = -Quad(kMaxStep);
  while (st.s > target) {
    if (st.s + h < target) h = target - st.s;
    PainleveState trial = st;
    if (taylor_step(trial, h, tol)) {
      st = trial;
      if (st.s - target < Quad(1e-30)) st.s = target;
      h = -Quad(kMaxStep);
    } else {
      h /= 2;
      if (abs(h) < Quad(1e-8))
        throw BoundaryConditionError("painleve_q: step size underflow near s = " +
                                     std::to_string(static_cast<double>(st.s)));
    }
  }
}

}  // namespace

struct MonotoneCubic::Impl {
  std::vector<double> x, y, slope;
};

// Fritsch-Carlson slopes: harmonic-type limiting keeps each cubic monotone.
MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("MonotoneCubic: need >= 2 matching points");
  std::vector<double> secant(n - 1), slope(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x[i + 1] > x[i])) throw DomainError("MonotoneCubic: x must be strictly ascending");
    secant[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  }
  slope[0] = secant[0];
  slope[n - 1] = secant[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    slope[i] = secant[i - 1] * secant[i] <= 0.0 ? 0.0 : 0.5 * (secant[i - 1] + secant[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (secant[i] == 0.0) {
      slope[i] = slope[i + 1] = 0.0;
      continue;
    }
    const double a = slope[i] / secant[i], b = slope[i + 1] / secant[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      slope[i] = tau * a * secant[i];
      slope[i + 1] = tau * b * secant[i];
    }
  }
  impl_ = std::make_shared<const Impl>(Impl{std::move(x), std::move(y), std::move(slope)});
}

double MonotoneCubic::operator()(double at) const {
  const auto& [x, y, m] = *impl_;
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const std::size_t i = std::upper_bound(x.begin(), x.end(), at) - x.begin() - 1;
  const double h = x[i + 1] - x[i], t = (at - x[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double lo = std::min(y[i], y[i + 1]), hi = std::max(y[i], y[i + 1]);
  const double delta = (3 * t2 - 2 * t3) * (y[i + 1] - y[i]) +
                       h * ((t3 - 2 * t2 + t) * m[i] + (t3 - t2) * m[i + 1]);
  return std::clamp(y[i] + delta, lo, hi);
}

PainleveSolution painleve_q(std::span<const double> grid, double tolerance) {
  if (grid.empty()) throw DomainError("painleve_q: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw DomainError("painleve_q: grid must be strictly ascending");
  if (grid.front() < -10.0 || grid.back() > kMatch)
    throw DomainError("painleve_q: grid must lie in [-10, 16]");

  const Quad pi = boost::math::constants::pi<Quad>();
  const Quad s0 = kMatch;
  const auto [ai, aip] = airy_asymptotic_positive<Quad>(s0, pi);
  // Tails of I and J from q = Ai beyond the match point; J uses the leading
  // term of the integrated expansion.
  const Quad zeta = Quad(2) / 3 * s0 * sqrt(s0);
  PainleveState st{s0,
                   ai,
                   aip,
                   (2 * s0 * s0 * ai * ai - 2 * s0 * aip * aip - ai * aip) / 3,
                   -(aip * aip - s0 * ai * ai),
                   exp(-zeta) / (2 * sqrt(pi) * pow(s0, Quad(0.75))) * (1 - Quad(41) / (48 * zeta))};

  const std::size_t n = grid.size();
  PainleveSolution out;
  out.s.assign(grid.begin(), grid.end());
  out.q.resize(n);
  out.qp.resize(n);
  out.I.resize(n);
  out.J.resize(n);
  const Quad tol = tolerance;
  for (std::size_t idx = n; idx-- > 0;) {
    advance_to(st, Quad(grid[idx]), tol);
    if (!(abs(st.q) <= Quad(kBlowUp)) || !(st.q > 0))
      throw BoundaryConditionError("painleve_q: solution left the Hastings-McLeod branch near s = " +
                                   std::to_string(grid[idx]));
    out.q[idx] = static_cast<double>(st.q);
    out.qp[idx] = static_cast<double>(st.qp);
    out.I[idx] = static_cast<double>(st.I);
    out.J[idx] = static_cast<double>(st.J);
  }
  return out;
}

TWTable tw_table(double s_min, double s_max, double step) {
  if (!(step > 0.0) || !(s_min < s_max)) throw DomainError("tw_table: need s_min < s_max, step > 0");
  const long count = std::lround((s_max - s_min) / step);
  if (count < 4) throw DomainError("tw_table: grid too coarse");
  std::vector<double> grid(count + 1);
  for (long i = 0; i <= count; ++i) grid[i] = s_min + (s_max - s_min) * double(i) / double(count);
  grid.back() = s_max;

  PainleveSolution sol = painleve_q(grid);
  TWTable t;
  t.s_min = s_min;
  t.s_max = s_max;
  t.step = (s_max - s_min) / double(count);
  t.s = std::move(sol.s);
  t.q = std::move(sol.q);
  t.qp = std::move(sol.qp);
  t.I = std::move(sol.I);
  t.J = std::move(sol.J);
  t.F1.resize(t.s.size());
  t.F2.resize(t.s.size());
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    t.F2[i] = std::exp(-t.I[i]);
    t.F1[i] = std::exp(-0.5 * (t.I[i] + t.J[i]));
  }
  tw_finalize(t);
  return t;
}

void tw_finalize(TWTable& t) {
  if (t.s.size() < 4 || t.F1.size() != t.s.size() || t.F2.size() != t.s.size())
    throw DomainError("tw_finalize: table columns are inconsistent");
  t.s_min = t.s.front();
  t.s_max = t.s.back();
  t.f1_interp = std::make_shared<const MonotoneCubic>(t.s, t.F1);
  t.f2_interp = std::make_shared<const MonotoneCubic>(t.s, t.F2);
}

double TWTable::cdf(int beta, double x, bool* clamped) const {
  if (beta != 1 && beta != 2) throw DomainError("tw_cdf: beta must be 1 or 2");
  if (clamped) *clamped = false;
  if (x < s_min || x > s_max) {
    if (clamped) *clamped = true;
    return x < s_min ? 0.0 : 1.0;
  }
  const auto& interp = beta == 1 ? f1_interp : f2_interp;
  if (!interp) throw DomainError("tw_cdf: table has no interpolant (call tw_finalize)");
  return std::clamp((*interp)(x), 0.0, 1.0);
}

TwValue tw_cdf(const TWTable& table, int beta, double s) {
  TwValue v;
  v.value = table.cdf(beta, s, &v.clamped);
  return v;
}

std::vector<double> q_integral_to_end(const TWTable& t) {
  const std::size_t n = t.s.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    const double h = t.s[i + 1] - t.s[i];
    out[i] = out[i + 1] + 0.5 * h * (t.q[i] + t.q[i + 1]) + h * h / 12.0 * (t.qp[i] - t.qp[i + 1]);
  }
  return out;
}

double tw_consistency_residual(const TWTable& t) {
  const std::vector<double> integral = q_integral_to_end(t);
  const double tail = t.J.back();
  double worst = 0.0;
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    const double lhs = t.F1[i] * t.F1[i];
    if (lhs < 1e-300) continue;
    const double rhs = t.F2[i] * std::exp(-(integral[i] + tail));
    worst = std::max(worst, std::abs(lhs - rhs) / lhs);
  }
  return worst;
}

namespace {

double residual_on(const std::vector<double>& s, const std::vector<double>& q) {
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < s.size(); ++i) {
    const double h = s[i + 1] - s[i];
    const double second =
        (-q[i + 2] + 16 * q[i + 1] - 30 * q[i] + 16 * q[i - 1] - q[i - 2]) / (12 * h * h);
    worst = std::max(worst, std::abs(second - s[i] * q[i] - 2 * q[i] * q[i] * q[i]));
  }
  return worst;
}

}  // namespace

double painleve_residual(const PainleveSolution& solution) {
  return residual_on(solution.s, solution.q);
}

double painleve_residual(const TWTable& table) { return residual_on(table.s, table.q); }

}  // namespace rmt
