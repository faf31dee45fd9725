#pragma once

namespace rmt {

/// Normalized Hermite function psi_l(x) = H_l(x) e^{-x^2/2} / sqrt(2^l l! sqrt(pi)),
/// via the three-term recurrence with log scaling; 0 <= l <= 10^6.
double hermite_psi(long l, double x);

/// One-point density of GUE at dimension n on the semicircle scale:
/// sqrt(2n) * sum_{l<n} psi_l(sqrt(2n) x)^2. Integrates to n.
double gue_finite_density(long n, double x);

/// n^{1/12} psi_n(sqrt(2n) (1 + theta / (2 n^{2/3}))), which tends to
/// 2^{1/4} Ai(theta).
double hermite_edge_profile(long n, double theta);

}  // namespace rmt
