#include "cantorq/distortion.hpp"

#include <algorithm>
#include <stdexcept>

#include "cantorq/quantizer.hpp"

namespace cantorq {

namespace {
const MeasureSpec& triadic() {
  static const MeasureSpec spec = MeasureSpec::triadic();
  return spec;
}
}  // namespace

const Rational& variance_error() {
  static const Rational v = moments(triadic()).variance;
  return v;
}

const Rational& two_point_error() {
  static const Rational v = [] {
    const MeasureSpec& spec = triadic();
    const CylinderUnion left = CylinderUnion::of({"1", "21"});
    const CylinderUnion right = CylinderUnion::of({"22", "23", "3"});
    return union_distortion_about(spec, left, union_mass_centroid(spec, left).centroid) +
           union_distortion_about(spec, right, union_mass_centroid(spec, right).centroid);
  }();
  return v;
}

const Rational& three_point_error() {
  static const Rational v = [] {
    const MeasureSpec& spec = triadic();
    Rational sum(0);
    for (int j = 1; j <= 3; ++j) {
      const CylinderUnion u({Word({j})});
      sum += union_distortion_about(spec, u, union_mass_centroid(spec, u).centroid);
    }
    return sum;
  }();
  return v;
}

Rational vn_exact(long n) {
  if (n < 1) throw std::domain_error("quantization error is defined for n >= 1");
  const int ell = level_of(n);
  const long cap = pow3(ell);
  const Rational scale = rational_pow(make_rational(1, 75), static_cast<unsigned>(ell));
  if (n <= 2 * cap)
    return scale * ((2 * cap - n) * variance_error() + (n - cap) * two_point_error());
  return scale * ((3 * cap - n) * two_point_error() + (n - 2 * cap) * three_point_error());
}

namespace {

// Adaptive subdivision: a cylinder wholly inside one Voronoi cell
// contributes the closed form mass * (scale^2 V + (centroid - point)^2);
// otherwise recurse into the three children until every boundary falls
// into a gap or the depth cap is hit.
class Subdivider {
 public:
  Subdivider(const std::vector<Rational>& pts, int depth_cap)
      : pts_(pts), depth_cap_(depth_cap), touched_(pts.size(), false) {
    boundaries_.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
      boundaries_.push_back((pts_[i] + pts_[i + 1]) / 2);
    const MeasureSpec& spec = triadic();
    s_ = spec.contraction();
    for (int j = 1; j <= 3; ++j) t_[static_cast<std::size_t>(j - 1)] = spec.translation(j);
    v_ = variance_error();
    left_half_ = union_aggregates(spec, CylinderUnion::tail(Word{}, 2, 1));
    right_half_ = union_aggregates(spec, CylinderUnion::tail(Word{}, 2, 3));
  }

  DistortionResult run() {
    visit(Rational(0), Rational(1), Rational(1), Rational(1), 0);
    DistortionResult res;
    res.exact = all_resolved_;
    res.lower = exact_sum_;
    res.upper = exact_sum_ + upper_extra_;
    res.value = res.lower;
    res.subdivision_depth_used = max_depth_;
    if (res.exact)
      for (std::size_t i = 0; i < touched_.size(); ++i)
        if (!touched_[i]) res.empty_cells.push_back(i);
    return res;
  }

 private:
  // Cell i spans (boundaries[i-1], boundaries[i]]; a boundary point goes
  // to the left cell, which is immaterial for mass but fixes determinism.
  std::size_t cell_of_right(const Rational& r) const {
    return static_cast<std::size_t>(
        std::lower_bound(boundaries_.begin(), boundaries_.end(), r) - boundaries_.begin());
  }

  Rational closed_form(const Rational& left, const Rational& right, const Rational& mass,
                       const Rational& scale, const Rational& point) const {
    const Rational c = (left + right) / 2;  // S_w(1/2) for the affine image
    return mass * (scale * scale * v_ + (c - point) * (c - point));
  }

  // int over the affine image of a base union of (x - point)^2 dP, from the
  // base union's aggregate sums.
  Rational image_integral(const UnionAggregates& base, const Rational& left,
                          const Rational& mass, const Rational& scale,
                          const Rational& point) const {
    const Rational shift = left - point;
    return mass * (scale * scale * base.second + 2 * scale * shift * base.first +
                   shift * shift * base.mass);
  }

  void visit(const Rational& left, const Rational& right, const Rational& mass,
             const Rational& scale, int depth) {
    max_depth_ = std::max(max_depth_, depth);
    const std::size_t cell = cell_of_right(right);
    if (cell == 0 || boundaries_[cell - 1] <= left) {
      exact_sum_ += closed_form(left, right, mass, scale, pts_[cell]);
      touched_[cell] = true;
      return;
    }
    // A lone boundary exactly on the cylinder center never reaches a gap
    // (the center recurs as the center of the middle child), but the two
    // halves of a cylinder are geometric tails with exact sums.
    const std::size_t lo = cell_of_right(left);
    if (cell == lo + 1 && boundaries_[lo] == (left + right) / 2) {
      exact_sum_ += image_integral(left_half_, left, mass, scale, pts_[lo]) +
                    image_integral(right_half_, left, mass, scale, pts_[cell]);
      touched_[lo] = true;
      touched_[cell] = true;
      return;
    }
    if (depth == depth_cap_) {
      all_resolved_ = false;
      // Enclose the unresolved cylinder: at least 0, at most the best
      // single-point assignment among the overlapping cells.
      std::size_t lo = cell_of_right(left);
      Rational best = closed_form(left, right, mass, scale, pts_[lo]);
      for (std::size_t i = lo + 1; i <= cell; ++i)
        best = std::min(best, closed_form(left, right, mass, scale, pts_[i]));
      upper_extra_ += best;
      return;
    }
    const Rational child_scale = scale * s_;
    for (std::size_t j = 0; j < 3; ++j) {
      const Rational child_left = left + scale * t_[j];
      visit(child_left, child_left + child_scale, mass / 3, child_scale, depth + 1);
    }
  }

  const std::vector<Rational>& pts_;
  std::vector<Rational> boundaries_;
  int depth_cap_;
  Rational s_, v_;
  UnionAggregates left_half_, right_half_;
  std::array<Rational, 3> t_;
  Rational exact_sum_{0}, upper_extra_{0};
  bool all_resolved_ = true;
  int max_depth_ = 0;
  std::vector<bool> touched_;
};

}  // namespace

DistortionResult codebook_distortion(std::vector<Rational> points, int depth_cap) {
  if (points.empty()) throw std::domain_error("empty codebook");
  if (depth_cap < 1) throw std::invalid_argument("depth cap must be >= 1");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return Subdivider(points, depth_cap).run();
}

bool Checkpoint::pass() const {
  if (expected_exact) return computed == *expected_exact;
  return abs(computed - *expected_decimal) <= tolerance;
}

namespace {

Rational about_own_centroid(const CylinderUnion& u) {
  const MeasureSpec& spec = triadic();
  return union_distortion_about(spec, u, union_mass_centroid(spec, u).centroid);
}

Checkpoint exact_row(std::string name, Rational computed, const Rational& expected) {
  Checkpoint c;
  c.name = std::move(name);
  c.computed = std::move(computed);
  c.expected_exact = expected;
  c.tolerance = Rational(0);
  return c;
}

Checkpoint decimal_row(std::string name, Rational computed, std::string_view printed) {
  Checkpoint c;
  c.name = std::move(name);
  c.computed = std::move(computed);
  const auto dot = printed.find('.');
  const auto places = static_cast<unsigned>(printed.size() - dot - 1);
  const BigInt den = boost::multiprecision::pow(BigInt(10), places);
  std::string digits(printed.substr(0, dot));
  digits.append(printed.substr(dot + 1));
  const auto first = digits.find_first_not_of('0');  // avoid the octal prefix
  digits = first == std::string::npos ? "0" : digits.substr(first);
  c.expected_decimal = make_rational(BigInt(digits), den);
  c.tolerance = make_rational(1, 2 * den);  // half ulp of the printed value
  return c;
}

}  // namespace

std::vector<Checkpoint> proof_checkpoint_integrals() {
  const MeasureSpec& spec = triadic();
  std::vector<Checkpoint> rows;

  rows.push_back(exact_row("pair_J2_J3_about_centroid",
                           about_own_centroid(CylinderUnion::of({"2", "3"})),
                           make_rational(4, 135)));
  rows.push_back(exact_row("J1_about_one_fifth",
                           union_distortion_about(spec, CylinderUnion::of({"1"}),
                                                  make_rational(1, 5)),
                           make_rational(13, 2700)));
  rows.push_back(exact_row(
      "J2_about_two_fifths_plus_J3_centered",
      union_distortion_about(spec, CylinderUnion::of({"2"}), make_rational(2, 5)) +
          about_own_centroid(CylinderUnion::of({"3"})),
      make_rational(17, 2700)));
  const CylinderUnion inner_tail = CylinderUnion::tail(Word({2}), 2, 1);
  rows.push_back(exact_row("series_2m1_about_two_fifths_doubled",
                           2 * union_distortion_about(spec, inner_tail, make_rational(2, 5)),
                           make_rational(19, 18900)));
  rows.push_back(exact_row("series_2m1_about_half",
                           union_distortion_about(spec, inner_tail, make_rational(1, 2)),
                           make_rational(1, 1350)));
  rows.push_back(exact_row("J13_about_one_tenth",
                           union_distortion_about(spec, CylinderUnion::of({"13"}),
                                                  make_rational(1, 10)),
                           make_rational(37, 50625)));
  rows.push_back(exact_row("right_half_about_its_mean",
                           union_distortion_about(spec, CylinderUnion::tail(Word{}, 2, 3),
                                                  half_split_stats(spec).a2),
                           make_rational(13, 882)));
  rows.push_back(exact_row("half_split_codebook", half_split_stats(spec).distortion,
                           make_rational(13, 441)));
  Rational nine(0);
  for (const Word& w : words_of_level(2)) nine += about_own_centroid(CylinderUnion({w}));
  rows.push_back(exact_row("level2_centroids", nine, make_rational(1, 5625)));

  // Two-means boundary sweep: each case splits the line into two unions
  // taken about their own centroids.
  const auto sweep_case = [&](std::string name, const CylinderUnion& lo,
                              const CylinderUnion& hi, std::string_view printed) {
    rows.push_back(decimal_row(std::move(name),
                               about_own_centroid(lo) + about_own_centroid(hi), printed));
  };
  sweep_case("two_means_case_1", CylinderUnion::of({"1"}),
             CylinderUnion::of({"2112", "2113", "212", "213", "22", "23", "3"}), "0.0299851");
  sweep_case("two_means_case_2", CylinderUnion::of({"1", "2111"}),
             CylinderUnion::of({"2113", "212", "213", "22", "23", "3"}), "0.0299173");
  sweep_case("two_means_case_3", CylinderUnion::of({"1", "2111", "2112"}),
             CylinderUnion::of({"212", "213", "22", "23", "3"}), "0.0297772");
  sweep_case("two_means_case_4", CylinderUnion::of({"1", "211"}),
             CylinderUnion::of({"2122", "2123", "213", "22", "23", "3"}), "0.0296178");
  sweep_case("two_means_case_5", CylinderUnion::of({"1", "211", "2121"}),
             CylinderUnion::of({"2123", "213", "22", "23", "3"}), "0.0294379");
  sweep_case("two_means_case_6", CylinderUnion::of({"1", "211", "2121", "2122"}),
             CylinderUnion::of({"213", "22", "23", "3"}), "0.0291947");
  sweep_case("two_means_case_7", CylinderUnion::of({"1", "211", "212"}),
             CylinderUnion::of({"21313", "2132", "2133", "22", "23", "3"}), "0.0293298");
  rows.push_back(decimal_row(
      "two_means_case_8",
      about_own_centroid(CylinderUnion::of({"1", "21", "221", "2221", "22221"})) +
          make_rational(13, 882),
      "0.0293099"));
  sweep_case("two_means_case_9", CylinderUnion::of({"1", "21", "221", "2221", "222211"}),
             CylinderUnion::of({"22222", "22223", "2223", "223", "23", "3"}), "0.0292511");

  return rows;
}

Rational splitting_residual(long n, const std::array<long, 3>& parts) {
  long sum = 0;
  for (long p : parts) {
    if (p < 1) throw std::domain_error("partition parts must be >= 1");
    sum += p;
  }
  if (sum != n) throw std::domain_error("partition parts must sum to n");
  return vn_exact(n) - (vn_exact(parts[0]) + vn_exact(parts[1]) + vn_exact(parts[2])) / 75;
}

}  // namespace cantorq
