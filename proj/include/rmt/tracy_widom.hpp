#pragma once

#include <memory>
#include <span>
#include <vector>

namespace rmt {

/// Hastings-McLeod solution of q'' = s q + 2 q^3 together with
///   I(s) = integral_s^inf (x - s) q(x)^2 dx,   J(s) = integral_s^inf q(x) dx
/// on an ascending grid.
struct PainleveSolution {
  std::vector<double> s, q, qp, I, J;
};

/// Integrates backward in quad precision by an adaptive Taylor-series
/// method, starting where q is indistinguishable from Ai (s = 16); the tails
/// of I and J beyond that point come from the Airy asymptotics. The grid must
/// be strictly ascending within [-10, 16]. `tolerance` bounds the relative
/// truncation estimate of each step.
/// BoundaryConditionError if |q| exceeds 1e6 or q turns nonpositive.
PainleveSolution painleve_q(std::span<const double> grid, double tolerance = 1e-30);

class MonotoneCubic;

/// Tabulated Tracy-Widom distributions F2 = exp(-I), F1 = exp(-(I+J)/2).
struct TWTable {
  std::vector<double> s, q, qp, I, J, F1, F2;
  double s_min = -10.0;
  double s_max = 8.0;
  double step = 0.01;

  /// Monotone cubic interpolation of F_beta.
  /// Outside [s_min, s_max] returns 0 or 1 and sets *clamped.
  double cdf(int beta, double x, bool* clamped = nullptr) const;

  std::shared_ptr<const MonotoneCubic> f1_interp, f2_interp;
};

/// Builds the table on the uniform grid s_min, s_min + step, ..., s_max.
TWTable tw_table(double s_min = -10.0, double s_max = 8.0, double step = 0.01);

/// Rebuilds interpolants for a table whose columns were filled externally.
void tw_finalize(TWTable& table);

struct TwValue {
  double value = 0.0;
  bool clamped = false;
};

TwValue tw_cdf(const TWTable& table, int beta, double s);

/// Integral of q over [s_i, s_max] by cubic Hermite rule on the table, for
/// every grid index.
std::vector<double> q_integral_to_end(const TWTable& table);

/// Max over the grid of |F1^2 - F2 exp(-integral_s^inf q)| / F1^2 (only
/// where F1^2 > 1e-300).
double tw_consistency_residual(const TWTable& table);

/// Max over interior grid points of |q'' - s q - 2 q^3| with q'' from the
/// fourth-order five-point difference.
double painleve_residual(const PainleveSolution& solution);
double painleve_residual(const TWTable& table);

/// Monotone piecewise cubic Hermite interpolant (Fritsch-Carlson slopes);
/// x strictly ascending, constant extrapolation.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double at) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace rmt
