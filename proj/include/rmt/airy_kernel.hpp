#pragma once

#include <span>

namespace rmt {

/// K(x,y) = (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y); within 1e-4 of the
/// diagonal a Taylor expansion in y - x is used, whose leading term is
/// Ai'(x)^2 - x Ai(x)^2.
double airy_kernel(double x, double y);

/// The integral form: integral over t >= 0 of Ai(x+t) Ai(y+t).
double airy_kernel_quadrature(double x, double y);

/// DK(y,z) = -dK(y,z)/dz.
double airy_kernel_dk(double y, double z);

/// JK(y,z) = -integral_y^inf K(t,z) dt - sgn(y-z)/2, with sgn(0) = 0.
double airy_kernel_jk(double y, double z);

/// Entries of the 2x2 block of the GOE edge matrix kernel at (y,z):
///   [ s(y,z)  d(y,z) ]
///   [ i(y,z)  s(z,y) ]
struct GoeKernelBlock {
  double s = 0.0;
  double d = 0.0;
  double i = 0.0;
  double s_transpose = 0.0;
};

GoeKernelBlock goe_kernel_block(double y, double z);

/// Limiting k-point edge correlation function (k <= 6).
/// beta = 2: det[K(x_i, x_j)]. beta = 1: sqrt of the determinant of the
/// assembled 2k x 2k block matrix. Small negative determinants (>= -1e-10)
/// are clamped to 0; larger ones raise NumericError.
double edge_correlation(int beta, std::span<const double> points);

/// One-point edge density R_{beta,1}(theta).
double edge_density(int beta, double theta);

/// Integral of e^{t theta} R_{beta,1}(theta) over the real line, t > 0.
/// The left tail beyond -200 is added in closed form from
/// R ~ sqrt|theta| / pi.
double edge_laplace(int beta, double t);

}  // namespace rmt
