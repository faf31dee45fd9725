#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace rmt {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

/// Parses "3", "-0.125", "1/8" or "2.5e-1" exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace rmt
