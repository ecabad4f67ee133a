#include "cantorq/lloyd.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include "cantorq/measure.hpp"

namespace cantorq {

namespace {

// Enumerates level-`depth` cylinder centroids in ascending order by
// walking the affine images (left offset, scale) exactly.
template <typename Emit>
void walk_atoms(const Rational& left, const Rational& scale, int depth, const MeasureSpec& spec,
                Emit&& emit) {
  if (depth == 0) {
    emit(left + scale / 2);
    return;
  }
  for (int j = 1; j <= 3; ++j)
    walk_atoms(left + scale * spec.translation(j), scale * spec.contraction(), depth - 1, spec,
               emit);
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  // rejection sampling keeps the draw sequence identical across platforms
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

constexpr double kImproveTol = 1e-13;

// Single-atom reassignment sweep over the contiguous 1-D partition
// induced by a sorted codebook. A fixed point of the centroid iteration
// can leave a cell boundary inside a cylinder; shifting edge atoms across
// it strictly lowers the within-cell cost and escapes such points. Returns
// the cell means when any move succeeded.
std::optional<std::vector<double>> reassignment_pass(const std::vector<double>& xs,
                                                     const std::vector<double>& centers) {
  const std::size_t n = centers.size();
  if (n < 2 || xs.size() < n) return std::nullopt;
  std::vector<std::size_t> cut(n + 1, xs.size());  // cell i = [cut[i], cut[i+1])
  cut[0] = 0;
  for (std::size_t b = 0; b + 1 < n; ++b) {
    const double mid = 0.5 * (centers[b] + centers[b + 1]);
    cut[b + 1] = static_cast<std::size_t>(
        std::upper_bound(xs.begin() + static_cast<long>(cut[b]), xs.end(), mid) - xs.begin());
  }
  std::vector<double> count(n), sum(n), sumsq(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = cut[i]; a < cut[i + 1]; ++a) {
      count[i] += 1;
      sum[i] += xs[a];
      sumsq[i] += xs[a] * xs[a];
    }
  const auto cost = [](double cnt, double s, double q) {
    return cnt > 0 ? q - s * s / cnt : 0.0;
  };

  bool improved = false, moved = true;
  while (moved) {
    moved = false;
    for (std::size_t b = 1; b < n; ++b) {  // boundary between cells b-1 and b
      while (count[b - 1] > 1) {  // rightmost atom of the left cell -> right
        const double x = xs[cut[b] - 1];
        const double before = cost(count[b - 1], sum[b - 1], sumsq[b - 1]) +
                              cost(count[b], sum[b], sumsq[b]);
        const double after = cost(count[b - 1] - 1, sum[b - 1] - x, sumsq[b - 1] - x * x) +
                             cost(count[b] + 1, sum[b] + x, sumsq[b] + x * x);
        if (after >= before - kImproveTol) break;
        --cut[b];
        count[b - 1] -= 1; sum[b - 1] -= x; sumsq[b - 1] -= x * x;
        count[b] += 1; sum[b] += x; sumsq[b] += x * x;
        improved = moved = true;
      }
      while (count[b] > 1) {  // leftmost atom of the right cell -> left
        const double x = xs[cut[b]];
        const double before = cost(count[b - 1], sum[b - 1], sumsq[b - 1]) +
                              cost(count[b], sum[b], sumsq[b]);
        const double after = cost(count[b - 1] + 1, sum[b - 1] + x, sumsq[b - 1] + x * x) +
                             cost(count[b] - 1, sum[b] - x, sumsq[b] - x * x);
        if (after >= before - kImproveTol) break;
        ++cut[b];
        count[b - 1] += 1; sum[b - 1] += x; sumsq[b - 1] += x * x;
        count[b] -= 1; sum[b] -= x; sumsq[b] -= x * x;
        improved = moved = true;
      }
    }
  }
  if (!improved) return std::nullopt;
  std::vector<double> means(n);
  for (std::size_t i = 0; i < n; ++i) means[i] = sum[i] / count[i];
  return means;
}

// Fixed-point iteration plus the reassignment polish, iterated until
// neither makes progress.
LloydResult polished_run(const DiscreteMeasure& m, std::vector<double> init,
                         const LloydConfig& cfg) {
  LloydResult run = lloyd_run(m, std::move(init), cfg);
  for (int round = 0; round < 32; ++round) {
    const auto means = reassignment_pass(m.locations, run.codebook);
    if (!means) break;
    LloydResult next = lloyd_run(m, *means, cfg);
    if (next.discrete_distortion >= run.discrete_distortion - kImproveTol) break;
    run = std::move(next);
  }
  return run;
}

// Center teleport: drop the center whose cell dissolves most cheaply and
// re-seed it on the atom contributing most; keep strict improvements.
// Repairs restarts whose branch allocation came out wrong.
LloydResult refine_with_swaps(const DiscreteMeasure& m, LloydResult cur,
                              const LloydConfig& cfg) {
  const std::size_t n = cur.codebook.size();
  if (n < 2) return cur;
  const std::vector<double>& xs = m.locations;

  for (std::size_t pass = 0; pass < 4 * n; ++pass) {
    const std::vector<double>& c = cur.codebook;
    std::vector<double> removal(n, 0.0);
    double worst_atom = -1.0;
    std::size_t worst_i = 0;
    std::size_t cell = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      while (cell + 1 < n && xs[i] > 0.5 * (c[cell] + c[cell + 1])) ++cell;
      const double d = xs[i] - c[cell];
      const double contrib = m.atom_mass * d * d;
      if (contrib > worst_atom) {
        worst_atom = contrib;
        worst_i = i;
      }
      double alt = std::numeric_limits<double>::infinity();
      if (cell > 0) alt = xs[i] - c[cell - 1];
      if (cell + 1 < n) alt = std::min(alt, c[cell + 1] - xs[i]);
      removal[cell] += m.atom_mass * alt * alt - contrib;
    }
    if (worst_atom <= kImproveTol) break;  // nothing left to gain

    LloydResult best_trial;
    bool have_trial = false;
    std::vector<std::size_t> victims(2);
    victims[0] = static_cast<std::size_t>(
        std::min_element(removal.begin(), removal.end()) - removal.begin());
    victims[1] = victims[0];
    for (std::size_t i = 0; i < n; ++i)  // runner-up victim
      if (i != victims[0] && (victims[1] == victims[0] || removal[i] < removal[victims[1]]))
        victims[1] = i;
    for (std::size_t victim : victims) {
      std::vector<double> candidate = c;
      candidate[victim] = xs[worst_i];
      std::sort(candidate.begin(), candidate.end());
      LloydResult trial = polished_run(m, std::move(candidate), cfg);
      if (!have_trial || trial.discrete_distortion < best_trial.discrete_distortion) {
        best_trial = std::move(trial);
        have_trial = true;
      }
    }
    if (have_trial && best_trial.discrete_distortion < cur.discrete_distortion - kImproveTol)
      cur = std::move(best_trial);
    else
      break;
  }
  return cur;
}

// D^2-weighted greedy seeding: the first center is a uniform atom, each
// further one an atom drawn with probability proportional to its squared
// distance to the centers chosen so far. Chosen atoms have weight zero,
// so the sample is without replacement.
std::vector<double> weighted_init(const std::vector<double>& xs, int n, std::mt19937_64& rng) {
  std::vector<double> centers;
  centers.reserve(static_cast<std::size_t>(n));
  centers.push_back(xs[bounded(rng, xs.size())]);
  std::vector<double> d2(xs.size());
  while (static_cast<int>(centers.size()) < n) {
    double total = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double d = xs[i] - centers.back();
      d2[i] = centers.size() == 1 ? d * d : std::min(d2[i], d * d);
      total += d2[i];
    }
    double threshold = unit_real(rng) * total;
    std::size_t pick = xs.size();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (d2[i] <= 0.0) continue;
      pick = i;  // last positive-weight atom catches rounding shortfall
      threshold -= d2[i];
      if (threshold <= 0.0) break;
    }
    centers.push_back(xs[pick]);
  }
  return centers;
}

}  // namespace

DiscreteMeasure discretize(int depth) {
  if (depth < 1 || depth > 15) throw std::domain_error("depth must be in [1, 15]");
  const MeasureSpec spec = MeasureSpec::triadic();
  DiscreteMeasure m;
  m.depth = depth;
  m.locations.reserve(static_cast<std::size_t>(std::pow(3.0, depth)));
  walk_atoms(Rational(0), Rational(1), depth, spec,
             [&](const Rational& c) { m.locations.push_back(to_double(c)); });
  m.atom_mass = 1.0 / static_cast<double>(m.locations.size());
  return m;
}

std::vector<Rational> exact_atom_locations(int depth) {
  if (depth < 1 || depth > 12) throw std::domain_error("depth must be in [1, 12]");
  const MeasureSpec spec = MeasureSpec::triadic();
  std::vector<Rational> atoms;
  walk_atoms(Rational(0), Rational(1), depth, spec,
             [&](const Rational& c) { atoms.push_back(c); });
  return atoms;
}

LloydResult lloyd_run(const DiscreteMeasure& m, std::vector<double> init,
                      const LloydConfig& cfg) {
  if (init.empty()) throw std::domain_error("empty initial codebook");
  if (cfg.tol <= 0 || cfg.max_iter < 1) throw std::invalid_argument("bad Lloyd configuration");
  std::sort(init.begin(), init.end());
  const std::size_t n = init.size();
  const std::vector<double>& xs = m.locations;

  std::vector<double> centers = std::move(init);
  std::vector<std::size_t> assign(xs.size());
  std::vector<double> cell_mass(n), cell_sum(n);

  LloydResult res;
  int iter = 0;
  while (iter < cfg.max_iter) {
    ++iter;
    std::fill(cell_mass.begin(), cell_mass.end(), 0.0);
    std::fill(cell_sum.begin(), cell_sum.end(), 0.0);
    double distortion = 0.0;
    std::size_t cell = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      // boundary midpoint belongs to the left cell
      while (cell + 1 < n && xs[i] > 0.5 * (centers[cell] + centers[cell + 1])) ++cell;
      assign[i] = cell;
      const double d = xs[i] - centers[cell];
      distortion += m.atom_mass * d * d;
      cell_mass[cell] += m.atom_mass;
      cell_sum[cell] += m.atom_mass * xs[i];
    }
    res.distortion_trace.push_back(distortion);

    std::vector<double> next(n);
    std::vector<std::size_t> taken;
    for (std::size_t c = 0; c < n; ++c) {
      if (cell_mass[c] > 0.0) {
        next[c] = cell_sum[c] / cell_mass[c];
        continue;
      }
      // empty cell: reseed at the atom with the largest contribution
      ++res.reseeds;
      double best = -1.0;
      std::size_t best_i = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::find(taken.begin(), taken.end(), i) != taken.end()) continue;
        const double d = xs[i] - centers[assign[i]];
        const double contrib = m.atom_mass * d * d;
        if (contrib > best) {
          best = contrib;
          best_i = i;
        }
      }
      taken.push_back(best_i);
      next[c] = xs[best_i];
    }
    std::sort(next.begin(), next.end());

    double movement = 0.0;
    for (std::size_t c = 0; c < n; ++c)
      movement = std::max(movement, std::abs(next[c] - centers[c]));
    centers = std::move(next);
    if (movement < cfg.tol) {
      res.converged = true;
      break;
    }
  }

  // final distortion for the converged centers
  double distortion = 0.0;
  std::size_t cell = 0;
  for (double x : xs) {
    while (cell + 1 < n && x > 0.5 * (centers[cell] + centers[cell + 1])) ++cell;
    const double d = x - centers[cell];
    distortion += m.atom_mass * d * d;
  }
  res.codebook = std::move(centers);
  res.discrete_distortion = distortion;
  res.iterations = iter;
  return res;
}

LloydResult lloyd_run_polished(const DiscreteMeasure& m, std::vector<double> init,
                               const LloydConfig& cfg) {
  return polished_run(m, std::move(init), cfg);
}

LloydResult best_of_restarts(int n, int depth, const LloydConfig& cfg) {
  const DiscreteMeasure m = discretize(depth);
  if (n < 1 || static_cast<std::size_t>(n) > m.locations.size())
    throw std::domain_error("need at least as many atoms as centers");
  if (cfg.restarts < 1) throw std::invalid_argument("bad restart count");

  std::mt19937_64 rng(cfg.rng_seed);
  LloydResult best;
  bool have_best = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    LloydResult run = polished_run(m, weighted_init(m.locations, n, rng), cfg);
    run = refine_with_swaps(m, std::move(run), cfg);
    constexpr double kTieTol = 1e-12;
    const bool better =
        !have_best || run.discrete_distortion < best.discrete_distortion - kTieTol ||
        (std::abs(run.discrete_distortion - best.discrete_distortion) <= kTieTol &&
         run.codebook < best.codebook);
    if (better) {
      best = std::move(run);
      have_best = true;
    }
  }
  return best;
}

Rational discrete_distortion_exact(const std::vector<Rational>& atoms,
                                   const std::vector<Rational>& codebook) {
  if (atoms.empty() || codebook.empty()) throw std::domain_error("empty atoms or codebook");
  std::vector<Rational> pts = codebook;
  std::sort(pts.begin(), pts.end());
  const Rational mass = make_rational(1, static_cast<long>(atoms.size()));
  Rational total(0);
  std::size_t cell = 0;
  for (const Rational& x : atoms) {  // atoms ascend, so the sweep is linear
    while (cell + 1 < pts.size() && x > (pts[cell] + pts[cell + 1]) / 2) ++cell;
    total += mass * (x - pts[cell]) * (x - pts[cell]);
  }
  return total;
}

}  // namespace cantorq
