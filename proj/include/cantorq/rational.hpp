#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cantorq {

/// Arbitrary-precision signed integer.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with positive
/// denominator. Equality is value equality.
using Rational = boost::multiprecision::cpp_rational;

/// Builds num/den with sign normalization. Throws std::domain_error on
/// zero denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "p", "-p" or "p/q". Whitespace is not accepted.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" for non-integers, plain "p" when the denominator is 1.
std::string fraction_string(const Rational& r);

/// Fixed-point decimal rendering with exact rounding (half away from
/// zero) to `digits` fractional digits.
std::string decimal_string(const Rational& r, int digits = 12);

double to_double(const Rational& r);

/// Exact binomial coefficient; zero when k < 0 or k > n.
BigInt binomial(const BigInt& n, const BigInt& k);

/// r^e for integer e >= 0.
Rational rational_pow(const Rational& r, unsigned e);

}  // namespace cantorq
