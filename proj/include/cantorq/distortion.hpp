#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cantorq/measure.hpp"
#include "cantorq/rational.hpp"

namespace cantorq {

/// V = 1/9, the one-point quantization error (variance).
const Rational& variance_error();
/// V_2 = 821/28125, distortion of the two-point codebook {9/50, 189/250}.
const Rational& two_point_error();
/// V_3 = 1/225, distortion of the branch centroids.
const Rational& three_point_error();

/// Exact n-point quantization error. Regime A at level ell:
///   ((2*3^ell - n) V + (n - 3^ell) V_2) / 75^ell,
/// regime B:
///   ((3^(ell+1) - n) V_2 + (n - 2*3^ell) V_3) / 75^ell.
/// Valid for every n >= 1 (level 0 reproduces V and V_2).
Rational vn_exact(long n);

/// Result of evaluating a codebook. Exact whenever every Voronoi boundary
/// resolves into a gap (or leaves [0,1]) within the subdivision depth;
/// otherwise a Bounds pair encloses the true value.
struct DistortionResult {
  bool exact = true;
  Rational value;  // exact value, or the lower bound
  Rational lower;
  Rational upper;
  int subdivision_depth_used = 0;
  std::vector<std::size_t> empty_cells;  // indices of points with zero-mass cells
};

/// Exact distortion of an arbitrary codebook by adaptive cylinder
/// subdivision. Cells are closed on the left (a boundary point belongs to
/// the smaller codebook point); points outside [0,1] are allowed and may
/// end up with empty cells.
DistortionResult codebook_distortion(std::vector<Rational> points, int depth_cap = 40);

/// One recomputed constant from the two-means / gap-avoidance estimates.
struct Checkpoint {
  std::string name;
  Rational computed;
  std::optional<Rational> expected_exact;
  std::optional<Rational> expected_decimal;  // printed reference value
  Rational tolerance;                        // half ulp of the reference rendering

  bool pass() const;
};

/// The full table of estimate constants, each recomputed from exact
/// cylinder-union integrals.
std::vector<Checkpoint> proof_checkpoint_integrals();

/// vn_exact(n) - (V_{n1} + V_{n2} + V_{n3}) / 75; zero exactly for the
/// balanced splits across the three branches.
Rational splitting_residual(long n, const std::array<long, 3>& parts);

}  // namespace cantorq
