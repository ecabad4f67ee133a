#include "cantorq/asymptotics.hpp"

#include <stdexcept>

#include "cantorq/distortion.hpp"

namespace cantorq {

BigFloat to_bigfloat(const Rational& r) {
  return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

const BigFloat& beta() {
  static const BigFloat b = log(BigFloat(3)) / log(BigFloat(5));
  return b;
}

const BigFloat& two_over_beta() {
  static const BigFloat t = 2 / beta();
  return t;
}

namespace detail {

BigFloat regime_a_formula(const BigFloat& x) {
  static const BigFloat c1 = to_bigfloat(2 * variance_error() - two_point_error());
  static const BigFloat c2 = to_bigfloat(variance_error() - two_point_error());
  return pow(x, two_over_beta()) * (c1 - c2 * x);
}

BigFloat regime_b_formula(const BigFloat& x) {
  static const BigFloat v2 = to_bigfloat(two_point_error());
  static const BigFloat v3 = to_bigfloat(three_point_error());
  return pow(x, two_over_beta()) * ((3 - x) * v2 + (x - 2) * v3);
}

}  // namespace detail

BigFloat regime_a_profile(const BigFloat& x) {
  if (x < 1 || x > 2) throw std::domain_error("regime-A profile is defined on [1, 2]");
  return detail::regime_a_formula(x);
}

BigFloat regime_b_profile(const BigFloat& x) {
  if (x < 2 || x > 3) throw std::domain_error("regime-B profile is defined on [2, 3]");
  return detail::regime_b_formula(x);
}

const BigFloat& profile_argmax() {
  static const BigFloat x = BigFloat(5429) / (1152 * (beta() + 2));
  return x;
}

OscillationProfile oscillation_profile() {
  OscillationProfile p;
  p.value_at_1 = regime_a_profile(BigFloat(1));
  p.value_at_2 = regime_a_profile(BigFloat(2));
  p.argmax_x = profile_argmax();
  p.max_value = regime_a_profile(p.argmax_x);
  p.accumulation_lo = p.value_at_1;
  p.accumulation_hi = p.max_value;
  return p;
}

namespace {

ScanRow scan_row(long n) {
  ScanRow row;
  row.n = n;
  row.ell = level_of(n);
  const long cap = pow3(row.ell);
  row.regime = n <= 2 * cap ? Regime::A : Regime::B;
  row.x = BigFloat(n) / cap;
  row.scaled_error = pow(BigFloat(n), two_over_beta()) * to_bigfloat(vn_exact(n));
  return row;
}

}  // namespace

std::vector<ScanRow> scan_scaled_errors(long n_min, long n_max) {
  if (n_min < 1 || n_min > n_max) throw std::domain_error("bad scan range");
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (long n = n_min; n <= n_max; ++n) rows.push_back(scan_row(n));
  return rows;
}

std::vector<SubsequenceRow> subsequence_limit_check(const BigFloat& x, int ell_max) {
  if (x < 1 || x > 2) throw std::domain_error("subsequence anchor must lie in [1, 2]");
  if (ell_max < 0 || ell_max > 12) throw std::domain_error("ell_max must be in [0, 12]");
  const BigFloat target = regime_a_profile(x);
  std::vector<SubsequenceRow> rows;
  rows.reserve(static_cast<std::size_t>(ell_max) + 1);
  for (int ell = 0; ell <= ell_max; ++ell) {
    SubsequenceRow row;
    row.ell = ell;
    row.n = floor(x * pow3(ell)).convert_to<long>();
    row.scaled_error = pow(BigFloat(row.n), two_over_beta()) * to_bigfloat(vn_exact(row.n));
    row.deviation = abs(row.scaled_error - target);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cantorq
