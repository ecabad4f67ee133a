#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cantorq/quantizer.hpp"
#include "cantorq/rational.hpp"

namespace cantorq {

/// 50-significant-digit float used for the scaled-error analysis; double
/// precision is not enough for the deep subsequence convergence checks.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

BigFloat to_bigfloat(const Rational& r);

/// The scaling exponent beta = log 3 / log 5 (so 3^(1/beta) = 5).
const BigFloat& beta();
const BigFloat& two_over_beta();
/// Symbolic form of beta, for reports.
inline std::string beta_symbolic() { return "log(3)/log(5)"; }

/// Scaled-error profile on regime A, x = n / 3^ell in [1, 2]:
///   x^(2/beta) ((2V - V_2) - x (V - V_2)).
/// Throws std::domain_error outside [1, 2].
BigFloat regime_a_profile(const BigFloat& x);

/// Companion profile on regime B, x in [2, 3]:
///   x^(2/beta) ((3 - x) V_2 + (x - 2) V_3).
/// Matches regime_a_profile at both ends: g(2) = f(2) and g(3) = f(1).
BigFloat regime_b_profile(const BigFloat& x);

/// Stationary point of the regime-A profile, 5429 / (1152 (beta + 2)).
const BigFloat& profile_argmax();

struct OscillationProfile {
  BigFloat value_at_1;   // 1/9
  BigFloat value_at_2;
  BigFloat max_value;
  BigFloat argmax_x;     // in (1, 2)
  BigFloat accumulation_lo, accumulation_hi;  // [f(1), max]
};
OscillationProfile oscillation_profile();

struct ScanRow {
  long n = 0;
  int ell = 0;
  Regime regime = Regime::A;
  BigFloat x;             // n / 3^ell, in [1, 3)
  BigFloat scaled_error;  // n^(2/beta) vn_exact(n)
};
std::vector<ScanRow> scan_scaled_errors(long n_min, long n_max);

struct SubsequenceRow {
  int ell = 0;
  long n = 0;  // floor(x 3^ell)
  BigFloat scaled_error;
  BigFloat deviation;  // |scaled_error - profile(x)|
};
/// Follows n_ell = floor(x 3^ell) for x in [1, 2]; the deviations shrink
/// like 3^-ell. ell_max <= 12.
std::vector<SubsequenceRow> subsequence_limit_check(const BigFloat& x, int ell_max);

namespace detail {
/// Profile formulas without the domain guard (used for finite-difference
/// probes at the interval ends).
BigFloat regime_a_formula(const BigFloat& x);
BigFloat regime_b_formula(const BigFloat& x);
}  // namespace detail

}  // namespace cantorq
