#include "rmt/hermite.hpp"

#include <cmath>
#include <numbers>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

constexpr double kRescale = 1e150;

// Runs the recurrence up to index `last`, calling visit(l, mantissa, log_scale)
// for every l; psi_l = mantissa * exp(log_scale).
template <typename Visit>
void hermite_sweep(long last, double x, Visit&& visit) {
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  visit(0L, cur, log_scale, 1.0);
  for (long l = 0; l < last; ++l) {
    const double next = std::sqrt(2.0 / (l + 1)) * x * cur - std::sqrt(double(l) / (l + 1)) * prev;
    prev = cur;
    cur = next;
    double factor = 1.0;
    if (std::abs(cur) > kRescale) {
      factor = kRescale;
      cur /= kRescale;
      prev /= kRescale;
      log_scale += std::log(kRescale);
    }
    visit(l + 1, cur, log_scale, factor);
  }
}

}  // namespace

double hermite_psi(long l, double x) {
  if (l < 0 || l > 1000000) throw DomainError("hermite_psi: index out of range [0, 1e6]");
  double mantissa = 0.0, log_scale = 0.0;
  hermite_sweep(l, x, [&](long, double m, double s, double) {
    mantissa = m;
    log_scale = s;
  });
  if (mantissa == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(mantissa)) + log_scale), mantissa);
}

double gue_finite_density(long n, double x) {
  if (n < 1) throw DomainError("gue_finite_density: n must be >= 1");
  const double root = std::sqrt(2.0 * n);
  const double u = root * x;
  double sum = 0.0, log_scale = 0.0;
  hermite_sweep(n - 1, u, [&](long, double m, double s, double factor) {
    sum = sum / (factor * factor) + m * m;
    log_scale = s;
  });
  if (sum == 0.0) return 0.0;
  return root * std::exp(std::log(sum) + 2.0 * log_scale);
}

double hermite_edge_profile(long n, double theta) {
  const double nd = static_cast<double>(n);
  const double x = std::sqrt(2.0 * nd) * (1.0 + theta / (2.0 * std::pow(nd, 2.0 / 3.0)));
  return std::pow(nd, 1.0 / 12.0) * hermite_psi(n, x);
}

}  // namespace rmt
