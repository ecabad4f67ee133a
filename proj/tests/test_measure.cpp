#include <cmath>
#include <random>

#include "doctest.h"

#include "cantorq/measure.hpp"
#include "support/generators.hpp"
#include "support/riemann.hpp"

using namespace cantorq;
using namespace cantorq::testing;

namespace {

Rational R(const char* s) { return parse_rational(s); }

// Exact moment recursion for the depth-d atomization: each refinement
// replaces an atom at x by k atoms at S_j(x). The atomized variance
// differs from the true one by exactly s^(2d) V.
std::pair<Rational, Rational> atomized_moments(int k, int depth) {
  const MeasureSpec spec(k);
  const Rational s = spec.contraction();
  Rational m1 = make_rational(1, 2), m2 = make_rational(1, 4);
  for (int d = 0; d < depth; ++d) {
    Rational n1(0), n2(0);
    for (int j = 1; j <= k; ++j) {
      const Rational t = spec.translation(j);
      n1 += s * m1 + t;
      n2 += s * s * m2 + 2 * s * t * m1 + t * t;
    }
    m1 = n1 / k;
    m2 = n2 / k;
  }
  return {m1, m2 - m1 * m1};
}

}  // namespace

TEST_SUITE_BEGIN("measure");

TEST_CASE("map_apply composes the branch maps") {
  const MeasureSpec spec = MeasureSpec::triadic();
  CHECK(map_apply(spec, Word{}, R("1/2")) == R("1/2"));
  CHECK(map_apply(spec, Word::parse("2"), R("1/2")) == R("1/2"));
  CHECK(map_apply(spec, Word::parse("21"), R("1/2")) == R("21/50"));
  CHECK(map_apply(spec, Word::parse("3"), R("0")) == R("4/5"));
  CHECK_THROWS_AS(map_apply(spec, Word::parse("4"), R("1/2")), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("2a"), std::invalid_argument);
}

TEST_CASE("cylinder_data") {
  const MeasureSpec spec = MeasureSpec::triadic();
  SUBCASE("branch 1") {
    const CylinderData d = cylinder_data(spec, Word::parse("1"));
    CHECK(d.left == 0);
    CHECK(d.right == R("1/5"));
    CHECK(d.mass == R("1/3"));
    CHECK(d.scale == R("1/5"));
    CHECK(d.centroid == R("1/10"));
  }
  SUBCASE("empty word is the whole interval") {
    const CylinderData d = cylinder_data(spec, Word{});
    CHECK(d.left == 0);
    CHECK(d.right == 1);
    CHECK(d.mass == 1);
    CHECK(d.scale == 1);
    CHECK(d.centroid == R("1/2"));
  }
  SUBCASE("word 13") {
    const CylinderData d = cylinder_data(spec, Word::parse("13"));
    CHECK(d.left == R("4/25"));
    CHECK(d.right == R("1/5"));
    CHECK(d.mass == R("1/9"));
    CHECK(d.scale == R("1/25"));
    CHECK(d.centroid == R("9/50"));
  }
}

TEST_CASE("moments solve the self-similarity fixed point") {
  CHECK(moments(MeasureSpec::triadic()).mean == R("1/2"));
  CHECK(moments(MeasureSpec::triadic()).variance == R("1/9"));
  CHECK(moments(MeasureSpec(2)).variance == R("1/8"));
  CHECK(moments(MeasureSpec(5)).variance == R("1/10"));

  // independent route: exact moment recursion to depth 20; the atomized
  // variance must miss the true one by exactly s^40 V
  for (int k : {2, 3, 5}) {
    const auto [mean, var] = atomized_moments(k, 20);
    const Rational v = moments(MeasureSpec(k)).variance;
    const Rational s = MeasureSpec(k).contraction();
    CHECK(mean == R("1/2"));
    CHECK(v - var == rational_pow(s, 40) * v);
  }
}

TEST_CASE("union mass and centroid") {
  const MeasureSpec spec = MeasureSpec::triadic();
  const auto left = union_mass_centroid(spec, CylinderUnion::of({"1", "21"}));
  CHECK(left.mass == R("4/9"));
  CHECK(left.centroid == R("9/50"));
  const auto right = union_mass_centroid(spec, CylinderUnion::of({"22", "23", "3"}));
  CHECK(right.mass == R("5/9"));
  CHECK(right.centroid == R("189/250"));
  CHECK((left.centroid + right.centroid) / 2 == R("117/250"));

  const auto tail = union_mass_centroid(spec, CylinderUnion::tail(Word{}, 2, 1));
  CHECK(tail.mass == R("1/2"));
  CHECK(tail.centroid == R("3/14"));
}

TEST_CASE("union distortion about a point") {
  const MeasureSpec spec = MeasureSpec::triadic();
  CHECK(union_distortion_about(spec, CylinderUnion::whole_space(), R("1/2")) == R("1/9"));
  CHECK(union_distortion_about(spec, CylinderUnion::of({"1"}), R("1/5")) == R("13/2700"));
  CHECK(union_distortion_about(spec, CylinderUnion::of({"13"}), R("1/10")) == R("37/50625"));
  const CylinderUnion u23 = CylinderUnion::of({"2", "3"});
  const Rational c = union_mass_centroid(spec, u23).centroid;
  CHECK(c == R("7/10"));
  CHECK(union_distortion_about(spec, u23, c) == R("4/135"));
}

TEST_CASE("half split is exactly computable and symmetric") {
  const HalfSplitStats s = half_split_stats(MeasureSpec::triadic());
  CHECK(s.a1 == R("3/14"));
  CHECK(s.a2 == R("11/14"));
  CHECK(s.distortion == R("13/441"));
  CHECK(s.a1 + s.a2 == 1);
  CHECK_THROWS_AS(half_split_stats(MeasureSpec(2)), std::domain_error);
}

TEST_CASE("construction rejects overlapping members") {
  CHECK_THROWS_AS(CylinderUnion::of({"1", "12"}), std::invalid_argument);
  CHECK_THROWS_AS(CylinderUnion::tail(Word{}, 2, 2), std::invalid_argument);
  // J_221 is a member of the tail J_1 u J_21 u J_221 u ...
  CHECK_THROWS_AS(CylinderUnion({Word::parse("221")},
                                TailDescriptor{Word{}, 2, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CylinderUnion({Word::parse("2213")},
                                TailDescriptor{Word{}, 2, 1}),
                  std::invalid_argument);
  // J_223 deviates from the repeated digit with a non-terminal digit
  CHECK_NOTHROW(CylinderUnion({Word::parse("223")}, TailDescriptor{Word{}, 2, 1}));
  CHECK_THROWS_AS(union_mass_centroid(MeasureSpec::triadic(), CylinderUnion({})),
                  std::domain_error);
}

TEST_CASE("per-cylinder closed form matches the aggregate route") {
  std::mt19937_64 rng(61001);
  for (int i = 0; i < 200; ++i) {
    const int k = i % 5 == 3 ? 2 : (i % 5 == 4 ? 5 : 3);
    const MeasureSpec spec(k);
    const Word w = random_word(rng, k, 8);
    const Rational x0 = random_rational(rng);
    const CylinderData d = cylinder_data(spec, w);
    const Rational v = moments(spec).variance;
    const Rational direct =
        d.mass * (d.scale * d.scale * v + (d.centroid - x0) * (d.centroid - x0));
    CHECK(direct == union_distortion_about(spec, CylinderUnion({w}), x0));
  }
}

TEST_CASE("distortion is additive over disjoint parts") {
  std::mt19937_64 rng(61002);
  const MeasureSpec spec = MeasureSpec::triadic();
  for (int i = 0; i < 40; ++i) {
    const std::vector<Word> words = random_disjoint_words(rng, 3, 4, 6);
    if (words.size() < 2) continue;
    const Rational x0 = random_rational(rng);
    Rational sum(0);
    for (const Word& w : words) sum += union_distortion_about(spec, CylinderUnion({w}), x0);
    CHECK(sum == union_distortion_about(spec, CylinderUnion(words), x0));
  }
}

TEST_CASE("children refine their parent exactly") {
  std::mt19937_64 rng(61003);
  const MeasureSpec spec = MeasureSpec::triadic();
  for (int i = 0; i < 40; ++i) {
    const Word w = random_word(rng, 3, 6);
    const Rational x0 = random_rational(rng);
    Rational sum(0);
    for (int j = 1; j <= 3; ++j)
      sum += union_distortion_about(spec, CylinderUnion({w.extended(j)}), x0);
    CHECK(sum == union_distortion_about(spec, CylinderUnion({w}), x0));
  }
}

TEST_CASE("second moment about any point shifts by the squared offset") {
  std::mt19937_64 rng(61004);
  const MeasureSpec spec = MeasureSpec::triadic();
  const Rational v = moments(spec).variance;
  for (int i = 0; i < 50; ++i) {
    const Rational x0 = random_rational(rng);
    const Rational want = v + (x0 - R("1/2")) * (x0 - R("1/2"));
    CHECK(union_distortion_about(spec, CylinderUnion::whole_space(), x0) == want);
  }
}

TEST_CASE("depth-12 brute force reproduces the exact integrals") {
  const MeasureSpec spec = MeasureSpec::triadic();
  const int depth = 12;
  // grid resolution error: uncut cylinders hide exactly V/25^depth of
  // spread; everything else is float noise plus the tail lump slack
  const double tol = (1.0 / 9.0) * std::pow(25.0, -depth) + 1e-11;

  const auto check = [&](const CylinderUnion& u, const Rational& x0) {
    const auto sums = testing::riemann_sums(u, to_double(x0), depth);
    const double exact = to_double(union_distortion_about(spec, u, x0));
    CHECK(std::abs(sums.distortion - exact) <= tol);
    const auto mc = union_mass_centroid(spec, u);
    CHECK(std::abs(sums.mass - to_double(mc.mass)) <= 1e-11);
    CHECK(std::abs(sums.first / sums.mass - to_double(mc.centroid)) <= 1e-9);
  };

  check(CylinderUnion::whole_space(), R("1/2"));
  check(CylinderUnion::of({"1"}), R("1/5"));
  check(CylinderUnion::of({"13"}), R("1/10"));
  check(CylinderUnion::of({"2", "3"}), R("7/10"));
  check(CylinderUnion::of({"1", "21"}), R("9/50"));
  check(CylinderUnion::tail(Word{}, 2, 1), R("3/14"));
  check(CylinderUnion::tail(Word::parse("2"), 2, 1), R("2/5"));
  check(CylinderUnion::tail(Word::parse("2"), 2, 1), R("1/2"));
}

TEST_SUITE_END();
