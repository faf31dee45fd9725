#include "rmt/airy_kernel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rmt/airy.hpp"
#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

namespace {

constexpr double kKernelTaylor = 1e-4;
constexpr double kDerivativeTaylor = 1e-2;
constexpr double kClamp = 1e-10;
constexpr double kLeftCut = -200.0;

double integrable_form(const AiryPair& a, double x, const AiryPair& b, double y) {
  return (a.ai * b.aip - a.aip * b.ai) / (x - y);
}

// K(x, x+h) = -sum_{m>=1} (Ai d_{m+1} - Ai' d_m) h^{m-1} / m!
double kernel_taylor(double x, double h) {
  const std::vector<double> d = airy_derivatives(x, 16);
  double sum = 0.0, power = 1.0;
  for (int m = 1; m + 1 < 16; ++m) {
    power /= m;  // h^{m-1} / m!
    sum -= (d[0] * d[m + 1] - d[1] * d[m]) * power;
    power *= h;
  }
  return sum;
}

double kernel_with(const AiryPair& a, double x, const AiryPair& b, double y) {
  if (std::abs(x - y) > kKernelTaylor) return integrable_form(a, x, b, y);
  return x <= y ? kernel_taylor(x, y - x) : kernel_taylor(y, x - y);
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double airy_kernel(double x, double y) { return kernel_with(airy(x), x, airy(y), y); }

double airy_kernel_quadrature(double x, double y) {
  const double upper = std::max(0.0, 30.0 - std::min(x, y));
  return integrate([&](double t) { return airy(x + t).ai * airy(y + t).ai; }, 0.0, upper, 1e-12,
                   0.5);
}

double airy_kernel_dk(double y, double z) {
  const double h = z - y;
  if (std::abs(h) > kDerivativeTaylor) {
    const AiryPair a = airy(y), b = airy(z);
    const double numerator = a.ai * b.aip - a.aip * b.ai;
    const double numerator_dz = a.ai * z * b.ai - a.aip * b.aip;
    return -(numerator_dz / (y - z) + numerator / ((y - z) * (y - z)));
  }
  // DK(y, y+h) = sum_{m>=2} (Ai d_{m+1} - Ai' d_m) (m-1) h^{m-2} / m!
  constexpr int kCount = 30;
  const std::vector<double> d = airy_derivatives(y, kCount);
  double sum = 0.0, power = 0.5;  // h^0 / 2!
  for (int m = 2; m + 1 < kCount; ++m) {
    sum += (d[0] * d[m + 1] - d[1] * d[m]) * (m - 1) * power;
    power *= h / (m + 1);
  }
  return sum;
}

double airy_kernel_jk(double y, double z) {
  const AiryPair b = airy(z);
  const double upper = std::max(y, 0.0) + 25.0;
  const double tail =
      integrate([&](double t) { return kernel_with(airy(t), t, b, z); }, y, upper, 1e-11, 1.0);
  return -tail - 0.5 * sgn(y - z);
}

GoeKernelBlock goe_kernel_block(double y, double z) {
  const AiryPair ay = airy(y), az = airy(z);
  const double cy = airy_cumulative(y), cz = airy_cumulative(z);
  GoeKernelBlock block;
  block.s = kernel_with(ay, y, az, z) + 0.5 * ay.ai * cz;
  block.d = -0.5 * ay.ai * az.ai + airy_kernel_dk(y, z);
  block.i = airy_kernel_jk(y, z) + 0.5 * (cy - cz) + 0.5 * (1.0 - cz) * cz;
  block.s_transpose = kernel_with(az, z, ay, y) + 0.5 * az.ai * cy;
  return block;
}

double edge_correlation(int beta, std::span<const double> points) {
  const auto k = static_cast<Eigen::Index>(points.size());
  if (k < 1 || k > 6) throw DomainError("edge_correlation: need 1 <= k <= 6 points");
  if (beta == 2) {
    Eigen::MatrixXd m(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) m(i, j) = airy_kernel(points[i], points[j]);
    return std::max(0.0, m.partialPivLu().determinant());
  }
  if (beta != 1) throw DomainError("edge_correlation: beta must be 1 or 2");
  Eigen::MatrixXd m(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const GoeKernelBlock b = goe_kernel_block(points[i], points[j]);
      m(2 * i, 2 * j) = b.s;
      m(2 * i, 2 * j + 1) = b.d;
      m(2 * i + 1, 2 * j) = b.i;
      m(2 * i + 1, 2 * j + 1) = b.s_transpose;
    }
  }
  const double det = m.partialPivLu().determinant();
  if (det < -kClamp)
    throw NumericError("edge_correlation: GOE block determinant is negative (" +
                       std::to_string(det) + ")");
  return std::sqrt(std::max(0.0, det));
}

double edge_density(int beta, double theta) {
  const AiryPair a = airy(theta);
  const double k = kernel_with(a, theta, a, theta);
  if (beta == 2) return k;
  if (beta != 1) throw DomainError("edge_density: beta must be 1 or 2");
  return std::abs(k + 0.5 * a.ai * airy_cumulative(theta));
}

double edge_laplace(int beta, double t) {
  if (!(t > 0.0)) throw DomainError("edge_laplace: t must be positive");
  if (beta != 1 && beta != 2) throw DomainError("edge_laplace: beta must be 1 or 2");
  // Right cut where the density's decay beats e^{t theta} by e^{-80}.
  const double decay = beta == 2 ? 4.0 / 3.0 : 2.0 / 3.0;
  double right = 5.0;
  while (decay * std::pow(right, 1.5) - t * right < 80.0) {
    right += 1.0;
    if (right > 200.0) throw DomainError("edge_laplace: t too large for the Airy range");
  }
  const double body = integrate(
      [&](double theta) { return std::exp(t * theta) * edge_density(beta, theta); }, kLeftCut,
      right, 1e-10, 1.0);
  // integral_{-inf}^{-L} e^{t theta} sqrt|theta| / pi = Gamma(3/2, tL) / (pi t^{3/2})
  const double x = -t * kLeftCut;
  const double upper_gamma =
      std::sqrt(x) * std::exp(-x) + 0.5 * std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
  return body + upper_gamma / (std::numbers::pi * std::pow(t, 1.5));
}

}  // namespace rmt
