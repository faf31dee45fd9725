#pragma once

#include <vector>

namespace rmt {

/// Ai and Ai' at one point.
struct AiryPair {
  double ai = 0.0;
  double aip = 0.0;
};

struct AiryPairLong {
  long double ai = 0.0L;
  long double aip = 0.0L;
};

/// Airy function of the first kind and its derivative, |x| <= 200.
/// Throws DomainError outside that range.
AiryPair airy(double x);

/// Same evaluation carried in extended precision.
AiryPairLong airy_long(long double x);

/// Ai(x), Ai'(x), Ai''(x), ... up to `count` derivatives (count >= 2),
/// from Ai'' = x Ai differentiated repeatedly.
std::vector<double> airy_derivatives(double x, int count);

/// Integral of Ai over (-inf, y]. Equals 2/3 at 0 and tends to 1 as y grows;
/// for y < -200 the leading oscillatory asymptotic is returned.
/// DomainError for y > 200.
double airy_cumulative(double y);

}  // namespace rmt
