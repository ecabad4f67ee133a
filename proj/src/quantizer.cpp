#include "cantorq/quantizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantorq {

namespace {
const MeasureSpec& triadic() {
  static const MeasureSpec spec = MeasureSpec::triadic();
  return spec;
}
}  // namespace

int level_of(long n) {
  if (n < 1) throw std::domain_error("level is defined for n >= 1");
  int ell = 0;
  long p = 1;
  while (p * 3 <= n) {
    p *= 3;
    ++ell;
  }
  return ell;
}

long pow3(int e) {
  long p = 1;
  while (e-- > 0) p *= 3;
  return p;
}

RegimeDescriptor regime_of(long n) {
  if (n < 3) throw std::domain_error("regime classification is defined for n >= 3");
  RegimeDescriptor r;
  r.n = n;
  r.ell = level_of(n);
  r.capacity = pow3(r.ell);
  r.regime = n <= 2 * r.capacity ? Regime::A : Regime::B;
  return r;
}

IndexSet IndexSet::of(int level, std::initializer_list<std::string_view> words) {
  IndexSet I;
  I.level = level;
  for (auto w : words) I.members.push_back(Word::parse(w));
  std::sort(I.members.begin(), I.members.end());
  return I;
}

long index_cardinality(const RegimeDescriptor& r) {
  return r.regime == Regime::A ? r.n - r.capacity : r.n - 2 * r.capacity;
}

namespace {

RegimeDescriptor small_descriptor(long n) {
  // n = 1, 2 sit at level 0 with I = {} and I = {empty word}.
  return RegimeDescriptor{n, 0, Regime::A, 1};
}

Quantizer make_quantizer(std::vector<Rational> pts, RegimeDescriptor r, IndexSet I) {
  Quantizer q;
  q.points = std::move(pts);
  q.regime = r;
  q.index = std::move(I);
  for (std::size_t i = 0; i + 1 < q.points.size(); ++i)
    if (!(q.points[i] < q.points[i + 1]))
      throw std::logic_error("codebook points must be strictly increasing");
  return q;
}

void validate_index_set(const RegimeDescriptor& r, const IndexSet& I) {
  if (I.level != r.ell)
    throw std::invalid_argument("index set words must have length ell(n) = " +
                                std::to_string(r.ell));
  const long want = index_cardinality(r);
  if (static_cast<long>(I.members.size()) != want)
    throw std::invalid_argument(
        "index set must contain exactly " + std::to_string(want) + " words (" +
        (r.regime == Regime::A ? "n - 3^ell in the lower band" : "n - 2*3^ell in the upper band") +
        "), got " + std::to_string(I.members.size()));
  for (std::size_t i = 0; i < I.members.size(); ++i) {
    const Word& w = I.members[i];
    if (static_cast<int>(w.length()) != r.ell)
      throw std::invalid_argument("index set word has the wrong length");
    for (int d : w.digits())
      if (d > 3) throw std::invalid_argument("index set word digit out of range");
    if (i > 0 && !(I.members[i - 1] < w))
      throw std::invalid_argument("index set members must be sorted and distinct");
  }
}

}  // namespace

Quantizer alpha1() {
  return make_quantizer({make_rational(1, 2)}, small_descriptor(1), IndexSet::empty(0));
}

Quantizer alpha2() {
  const MeasureSpec& spec = triadic();
  const Rational left = union_mass_centroid(spec, CylinderUnion::of({"1", "21"})).centroid;
  const Rational right = union_mass_centroid(spec, CylinderUnion::of({"22", "23", "3"})).centroid;
  IndexSet I = IndexSet::empty(0);
  I.members.push_back(Word{});
  return make_quantizer({left, right}, small_descriptor(2), std::move(I));
}

Quantizer alpha3() {
  const MeasureSpec& spec = triadic();
  std::vector<Rational> pts;
  for (int j = 1; j <= 3; ++j)
    pts.push_back(map_apply(spec, Word({j}), make_rational(1, 2)));
  return make_quantizer(std::move(pts), regime_of(3), IndexSet::empty(1));
}

std::vector<Word> words_of_level(int ell) {
  if (ell < 0) throw std::domain_error("negative level");
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(pow3(ell)));
  std::vector<int> digits(static_cast<std::size_t>(ell), 1);
  while (true) {
    out.push_back(Word(digits));
    int i = ell - 1;
    while (i >= 0 && digits[static_cast<std::size_t>(i)] == 3) {
      digits[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++digits[static_cast<std::size_t>(i)];
  }
  return out;
}

Quantizer optimal_set(long n, const IndexSet& I) {
  if (n == 1) return alpha1();
  if (n == 2) return alpha2();
  const RegimeDescriptor r = regime_of(n);
  validate_index_set(r, I);
  const MeasureSpec& spec = triadic();
  const std::vector<Rational> a2 = alpha2().points;
  const std::vector<Rational> a3 = alpha3().points;

  std::vector<Rational> pts;
  pts.reserve(static_cast<std::size_t>(n));
  // Level words in lexicographic order produce ascending points because
  // each S_w is increasing and cylinders are ordered left to right.
  for (const Word& w : words_of_level(r.ell)) {
    const bool selected = std::binary_search(I.members.begin(), I.members.end(), w);
    if (r.regime == Regime::A) {
      if (selected)
        for (const Rational& p : a2) pts.push_back(map_apply(spec, w, p));
      else
        pts.push_back(map_apply(spec, w, make_rational(1, 2)));
    } else {
      const std::vector<Rational>& sub = selected ? a3 : a2;
      for (const Rational& p : sub) pts.push_back(map_apply(spec, w, p));
    }
  }
  if (static_cast<long>(pts.size()) != n)
    throw std::logic_error("constructed codebook has wrong cardinality");
  return make_quantizer(std::move(pts), r, I);
}

BigInt count_optimal_sets(long n) {
  const RegimeDescriptor r = regime_of(n);
  return binomial(BigInt(r.capacity), BigInt(index_cardinality(r)));
}

void for_each_index_set(long n, const std::function<bool(const IndexSet&)>& visit) {
  const RegimeDescriptor r = regime_of(n);
  const long want = index_cardinality(r);
  const std::vector<Word> words = words_of_level(r.ell);
  const long total = r.capacity;

  std::vector<long> pick(static_cast<std::size_t>(want));
  for (long i = 0; i < want; ++i) pick[static_cast<std::size_t>(i)] = i;

  while (true) {
    IndexSet I;
    I.level = r.ell;
    I.members.reserve(pick.size());
    for (long idx : pick) I.members.push_back(words[static_cast<std::size_t>(idx)]);
    if (!visit(I)) return;
    if (want == 0) return;
    // next combination in lexicographic order
    long i = want - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == total - want + i) --i;
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (long j = i + 1; j < want; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<IndexSet> enumerate_index_sets(long n, std::size_t limit) {
  std::vector<IndexSet> out;
  for_each_index_set(n, [&](const IndexSet& I) {
    if (out.size() >= limit) return false;
    out.push_back(I);
    return out.size() < limit;
  });
  return out;
}

}  // namespace cantorq
