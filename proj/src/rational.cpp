#include "rmt/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "rmt/errors.hpp"

namespace rmt {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("rational_from_double: non-finite value");
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // mantissa * 2^53 is an exact integer
  const auto integral = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational q{BigInt(integral)};
  exponent -= 53;
  const BigInt power = BigInt(1) << std::abs(exponent);
  return exponent >= 0 ? q * Rational(power) : q / Rational(power);
}

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return ConfigError("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw fail();
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  BigInt digits = 0;
  int scale = 0;
  bool seen_digit = false;
  bool after_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (after_point) ++scale;
      seen_digit = true;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw fail();
  int exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    try {
      std::size_t used = 0;
      exponent = std::stoi(std::string(text.substr(i + 1)), &used);
      if (used != text.size() - i - 1) throw fail();
    } catch (const std::logic_error&) {
      throw fail();
    }
  }
  exponent -= scale;
  Rational q{digits};
  BigInt ten = 1;
  for (int k = 0; k < std::abs(exponent); ++k) ten *= 10;
  q = exponent >= 0 ? q * Rational(ten) : q / Rational(ten);
  return negative ? -q : q;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace rmt
