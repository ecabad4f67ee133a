#include "cantorq/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cantorq {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  // cpp_rational's (num, den) constructor requires den > 0; division
  // normalizes sign and reduces.
  return Rational(num) / Rational(den);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed integer");
  BigInt v{std::string(s)};
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const BigInt num = parse_integer(text.substr(0, slash));
  const std::string_view den_part = text.substr(slash + 1);
  if (!all_digits(den_part)) throw std::invalid_argument("malformed denominator");
  const BigInt den{std::string(den_part)};
  if (den == 0) throw std::invalid_argument("zero denominator");
  return make_rational(num, den);
}

std::string fraction_string(const Rational& r) {
  std::ostringstream out;
  out << numerator(r);
  if (denominator(r) != 1) out << '/' << denominator(r);
  return out.str();
}

std::string decimal_string(const Rational& r, int digits) {
  if (digits < 0) throw std::invalid_argument("negative digit count");
  const bool neg = r < 0;
  const BigInt num = neg ? BigInt(-numerator(r)) : numerator(r);
  const BigInt den = denominator(r);
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  BigInt q = num * scale / den;
  const BigInt rem = num * scale % den;
  if (2 * rem >= den) ++q;  // round half away from zero
  std::ostringstream out;
  if (neg && q != 0) out << '-';
  const BigInt whole = q / scale;
  out << whole;
  if (digits > 0) {
    const BigInt frac_part = q % scale;
    std::string frac = frac_part.str();
    out << '.' << std::string(static_cast<size_t>(digits) - frac.size(), '0') << frac;
  }
  return out.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(const BigInt& n, const BigInt& k) {
  if (k < 0 || k > n) return 0;
  BigInt kk = k;
  if (n - k < kk) kk = n - k;
  BigInt result = 1;
  for (BigInt i = 1; i <= kk; ++i) result = result * (n - kk + i) / i;
  return result;
}

Rational rational_pow(const Rational& r, unsigned e) {
  Rational acc(1), base = r;
  while (e > 0) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1u;
  }
  return acc;
}

}  // namespace cantorq
