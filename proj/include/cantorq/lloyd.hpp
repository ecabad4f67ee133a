#pragma once

#include <cstdint>
#include <vector>

#include "cantorq/rational.hpp"

namespace cantorq {

inline constexpr std::uint64_t kDefaultSeed = 20240817;

/// Depth-d atomization of the triadic measure: one atom of mass 3^-d at
/// each level-d cylinder centroid. Locations are computed exactly and
/// rendered to double; they are strictly increasing.
struct DiscreteMeasure {
  int depth = 0;
  std::vector<double> locations;
  double atom_mass = 0.0;
};

/// 1 <= depth <= 15.
DiscreteMeasure discretize(int depth);

/// Exact atom locations for the same grid (kept rational). depth <= 12.
std::vector<Rational> exact_atom_locations(int depth);

struct LloydConfig {
  double tol = 1e-12;
  int max_iter = 10000;
  int restarts = 64;
  std::uint64_t rng_seed = kDefaultSeed;
};

struct LloydResult {
  std::vector<double> codebook;  // sorted
  double discrete_distortion = 0.0;
  int iterations = 0;
  bool converged = false;
  int reseeds = 0;                      // empty-cell events handled
  std::vector<double> distortion_trace; // distortion before each update
};

/// Alternates nearest-atom assignment (ties to the lower-indexed center)
/// and cell-centroid updates until the largest center movement drops
/// below tol. An empty cell is reseeded at the atom currently
/// contributing most to the distortion.
LloydResult lloyd_run(const DiscreteMeasure& m, std::vector<double> init,
                      const LloydConfig& cfg);

/// lloyd_run followed by single-atom reassignment sweeps, iterated to a
/// joint fixed point. The plain iteration cannot move a cell boundary
/// off an atom cluster it landed in; the sweeps can, so this is the
/// entry point the multistart search builds on.
LloydResult lloyd_run_polished(const DiscreteMeasure& m, std::vector<double> init,
                               const LloydConfig& cfg);

/// Best of `cfg.restarts` runs from random n-subsets of the atoms
/// (sampled without replacement, deterministic for a fixed seed). Results
/// are merged by distortion at 1e-12 granularity, then by lexicographic
/// codebook order, so ties are broken deterministically.
LloydResult best_of_restarts(int n, int depth, const LloydConfig& cfg);

/// Exact distortion of a codebook against exact atoms of mass 3^-depth,
/// ties assigned to the smaller point.
Rational discrete_distortion_exact(const std::vector<Rational>& atoms,
                                   const std::vector<Rational>& codebook);

}  // namespace cantorq
