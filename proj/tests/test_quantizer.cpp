#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"

#include "cantorq/quantizer.hpp"
#include "support/generators.hpp"

using namespace cantorq;
using namespace cantorq::testing;

namespace {

Rational R(const char* s) { return parse_rational(s); }

IndexSet random_index_set(std::mt19937_64& rng, long n) {
  const RegimeDescriptor r = regime_of(n);
  const long want = index_cardinality(r);
  std::vector<Word> words = words_of_level(r.ell);
  for (std::size_t i = words.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(words[i - 1], words[pick(rng)]);
  }
  words.resize(static_cast<std::size_t>(want));
  std::sort(words.begin(), words.end());
  return IndexSet{r.ell, std::move(words)};
}

// Does the point lie inside a closed level-`ell` cylinder? Walk down the
// levels, locating the child interval containing the point.
bool inside_level_cylinder(const Rational& p, int ell) {
  const MeasureSpec spec = MeasureSpec::triadic();
  Rational left(0), scale(1);
  for (int depth = 0; depth < ell; ++depth) {
    const Rational next_scale = scale * spec.contraction();
    bool found = false;
    for (int j = 1; j <= 3; ++j) {
      const Rational l = left + scale * spec.translation(j);
      if (p >= l && p <= l + next_scale) {
        left = l;
        found = true;
        break;
      }
    }
    if (!found) return false;
    scale = next_scale;
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("quantizer");

TEST_CASE("levels and regimes") {
  CHECK(level_of(1) == 0);
  CHECK(level_of(2) == 0);
  CHECK(level_of(3) == 1);
  CHECK(level_of(8) == 1);
  CHECK(level_of(9) == 2);

  CHECK(regime_of(9).ell == 2);
  CHECK(regime_of(9).regime == Regime::A);
  CHECK(regime_of(5).ell == 1);
  CHECK(regime_of(5).regime == Regime::A);
  CHECK(regime_of(7).ell == 1);
  CHECK(regime_of(7).regime == Regime::B);
  // the boundary n = 2 * 3^ell belongs to regime A
  CHECK(regime_of(18).regime == Regime::A);
  CHECK(regime_of(19).regime == Regime::B);
  CHECK_THROWS_AS(regime_of(2), std::domain_error);
}

TEST_CASE("small codebooks") {
  CHECK(alpha1().points == std::vector<Rational>{R("1/2")});
  CHECK(alpha2().points == std::vector<Rational>{R("9/50"), R("189/250")});
  CHECK(alpha3().points == std::vector<Rational>{R("1/10"), R("1/2"), R("9/10")});
  CHECK((alpha2().points[0] + alpha2().points[1]) / 2 == R("117/250"));
}

TEST_CASE("optimal_set constructions") {
  CHECK(optimal_set(3, IndexSet::empty(1)).points ==
        std::vector<Rational>{R("1/10"), R("1/2"), R("9/10")});

  const Quantizer q4 = optimal_set(4, IndexSet::of(1, {"3"}));
  CHECK(q4.points == std::vector<Rational>{R("1/10"), R("1/2"), R("209/250"), R("1189/1250")});

  const Quantizer q9 = optimal_set(9, IndexSet::empty(2));
  REQUIRE(q9.points.size() == 9);
  CHECK(q9.points.front() == R("1/50"));
  CHECK(q9.points[4] == R("1/2"));
  CHECK(q9.points.back() == R("49/50"));

  CHECK_THROWS_AS(optimal_set(4, IndexSet::empty(1)), std::invalid_argument);
  CHECK_THROWS_AS(optimal_set(4, IndexSet::of(2, {"13"})), std::invalid_argument);
  CHECK_THROWS_AS(optimal_set(4, IndexSet::of(1, {"4"})), std::invalid_argument);
}

TEST_CASE("counting and enumeration agree") {
  CHECK(count_optimal_sets(9) == 1);
  CHECK(count_optimal_sets(4) == 3);
  CHECK(count_optimal_sets(12) == 84);

  const auto sets4 = enumerate_index_sets(4, 10);
  REQUIRE(sets4.size() == 3);
  CHECK(sets4[0].members == std::vector<Word>{Word::parse("1")});
  CHECK(sets4[1].members == std::vector<Word>{Word::parse("2")});
  CHECK(sets4[2].members == std::vector<Word>{Word::parse("3")});

  const auto sets9 = enumerate_index_sets(9, 10);
  REQUIRE(sets9.size() == 1);
  CHECK(sets9[0].members.empty());

  const auto sets12 = enumerate_index_sets(12, 3);
  REQUIRE(sets12.size() == 3);
  CHECK(sets12[0].members ==
        std::vector<Word>{Word::parse("11"), Word::parse("12"), Word::parse("13")});
  CHECK(sets12[1].members ==
        std::vector<Word>{Word::parse("11"), Word::parse("12"), Word::parse("21")});
  CHECK(sets12[2].members ==
        std::vector<Word>{Word::parse("11"), Word::parse("12"), Word::parse("22")});

  for (long n : {4L, 12L}) {
    long total = 0;
    std::set<std::vector<Word>> seen;
    for_each_index_set(n, [&](const IndexSet& I) {
      ++total;
      seen.insert(I.members);
      return true;
    });
    CHECK(BigInt(total) == count_optimal_sets(n));
    CHECK(BigInt(seen.size()) == count_optimal_sets(n));
  }
}

TEST_CASE("cardinality and cylinder containment") {
  std::mt19937_64 rng(71001);
  for (long n = 3; n <= 200; n = n < 40 ? n + 1 : n + 17) {
    const RegimeDescriptor r = regime_of(n);
    for (int rep = 0; rep < (count_optimal_sets(n) > 20 ? 5 : 20); ++rep) {
      const Quantizer q = optimal_set(n, random_index_set(rng, n));
      CHECK(static_cast<long>(q.points.size()) == n);
      CHECK(std::is_sorted(q.points.begin(), q.points.end()));
      CHECK(q.points.front() > 0);
      CHECK(q.points.back() < 1);
      // every point sits inside a closed level-ell cylinder, i.e. avoids
      // every gap interior down to that level
      for (const Rational& p : q.points) CHECK(inside_level_cylinder(p, r.ell));
    }
  }
}

TEST_CASE("tripled codebooks are branch images") {
  std::mt19937_64 rng(71002);
  const MeasureSpec spec = MeasureSpec::triadic();
  for (long n = 3; n <= 30; ++n) {
    const IndexSet I = random_index_set(rng, n);
    const Quantizer base = optimal_set(n, I);

    IndexSet pushed;
    pushed.level = I.level + 1;
    for (int j = 1; j <= 3; ++j)
      for (const Word& w : I.members) {
        std::vector<int> ds{j};
        ds.insert(ds.end(), w.digits().begin(), w.digits().end());
        pushed.members.push_back(Word(std::move(ds)));
      }
    std::sort(pushed.members.begin(), pushed.members.end());

    std::vector<Rational> expected;
    for (int j = 1; j <= 3; ++j)
      for (const Rational& p : base.points) expected.push_back(map_apply(spec, Word({j}), p));
    std::sort(expected.begin(), expected.end());

    CHECK(optimal_set(3 * n, pushed).points == expected);
  }
}

TEST_CASE("scaled two-point codebooks straddle a gap at their midpoint") {
  std::mt19937_64 rng(71003);
  const MeasureSpec spec = MeasureSpec::triadic();
  const auto a2 = alpha2().points;
  for (int i = 0; i < 30; ++i) {
    const Word w = random_word(rng, 3, 5);
    const Rational mid = (map_apply(spec, w, a2[0]) + map_apply(spec, w, a2[1])) / 2;
    CHECK(mid == map_apply(spec, w, R("117/250")));
    CHECK(map_apply(spec, w, R("11/25")) < mid);
    CHECK(mid < map_apply(spec, w, R("12/25")));
  }
}

TEST_CASE("distinct index sets give distinct codebooks") {
  for (long n = 3; n <= 12; ++n) {
    std::set<std::vector<Rational>> seen;
    long total = 0;
    for_each_index_set(n, [&](const IndexSet& I) {
      seen.insert(optimal_set(n, I).points);
      ++total;
      return true;
    });
    CHECK(static_cast<long>(seen.size()) == total);
  }
  std::mt19937_64 rng(71004);
  for (long n = 13; n <= 30; ++n) {
    std::set<std::vector<Word>> picked;
    std::set<std::vector<Rational>> seen;
    for (int rep = 0; rep < 20; ++rep) {
      const IndexSet I = random_index_set(rng, n);
      if (picked.insert(I.members).second) seen.insert(optimal_set(n, I).points);
    }
    CHECK(seen.size() == picked.size());
  }
}

TEST_CASE("both constructions agree at the regime boundary") {
  const MeasureSpec spec = MeasureSpec::triadic();
  const auto a2 = alpha2().points;
  for (int ell = 1; ell <= 2; ++ell) {
    const long n = 2 * pow3(ell);
    IndexSet full{ell, words_of_level(ell)};
    const Quantizer via_a = optimal_set(n, full);  // every branch carries alpha2

    std::vector<Rational> via_b;  // regime-B form with an empty index set
    for (const Word& w : words_of_level(ell))
      for (const Rational& p : a2) via_b.push_back(map_apply(spec, w, p));
    std::sort(via_b.begin(), via_b.end());
    CHECK(via_a.points == via_b);
  }
}

TEST_SUITE_END();
