#include "cantorq/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantorq {

Word::Word(std::vector<int> digits) : digits_(std::move(digits)) {
  for (int d : digits_)
    if (d < 1) throw std::invalid_argument("word digit must be >= 1");
}

Word Word::parse(std::string_view text) {
  std::vector<int> ds;
  ds.reserve(text.size());
  for (char c : text) {
    if (c < '1' || c > '9') throw std::invalid_argument("word digit must be '1'..'9'");
    ds.push_back(c - '0');
  }
  return Word(std::move(ds));
}

std::string Word::str() const {
  std::string s;
  s.reserve(digits_.size());
  for (int d : digits_) s.push_back(static_cast<char>('0' + d));
  return s;
}

bool Word::is_prefix_of(const Word& other) const {
  if (length() > other.length()) return false;
  return std::equal(digits_.begin(), digits_.end(), other.digits_.begin());
}

bool Word::comparable(const Word& other) const {
  return is_prefix_of(other) || other.is_prefix_of(*this);
}

Word Word::extended(int digit) const {
  std::vector<int> ds = digits_;
  ds.push_back(digit);
  return Word(std::move(ds));
}

MeasureSpec::MeasureSpec(int branches) : k(branches) {
  if (k < 2) throw std::domain_error("branch count must be >= 2");
}

Rational MeasureSpec::translation(int j) const {
  if (j < 1 || j > k) throw std::invalid_argument("branch index out of range");
  return make_rational(2 * (j - 1), 2 * k - 1);
}

namespace {

void check_digit(int d, int k) {
  if (d < 1 || d > k) throw std::invalid_argument("word digit out of range for this measure");
}

// Does J_v meet the tail J_{wt} u J_{wrt} u ...? Compare v against the
// infinite word w r r r ...; if v is a prefix of it, J_v contains tail
// members. Otherwise the first mismatch decides: a mismatch inside w
// separates v from every member, and a mismatch right after the leading
// run of r's hits a member exactly when the deviating digit equals t.
bool tail_overlaps(const TailDescriptor& tail, const Word& v) {
  const auto& vd = v.digits();
  const auto& wd = tail.stem.digits();
  for (std::size_t i = 0; i < vd.size(); ++i) {
    const int expect = i < wd.size() ? wd[i] : tail.repeated;
    if (vd[i] != expect) {
      if (i < wd.size()) return false;
      return vd[i] == tail.terminal;
    }
  }
  return true;  // v is a prefix of w r^inf
}

}  // namespace

CylinderUnion::CylinderUnion(std::vector<Word> finite_part,
                             std::optional<TailDescriptor> tail_part)
    : finite_part_(std::move(finite_part)), tail_part_(std::move(tail_part)) {
  for (std::size_t i = 0; i < finite_part_.size(); ++i)
    for (std::size_t j = i + 1; j < finite_part_.size(); ++j)
      if (finite_part_[i].comparable(finite_part_[j]))
        throw std::invalid_argument("cylinders in a union must be pairwise disjoint");
  if (tail_part_) {
    if (tail_part_->repeated < 1 || tail_part_->terminal < 1)
      throw std::invalid_argument("tail digits must be >= 1");
    if (tail_part_->repeated == tail_part_->terminal)
      throw std::invalid_argument("tail terminal digit must differ from the repeated digit");
    for (const Word& w : finite_part_)
      if (tail_overlaps(*tail_part_, w))
        throw std::invalid_argument("finite cylinder overlaps the tail");
  }
}

CylinderUnion CylinderUnion::of(std::initializer_list<std::string_view> words) {
  std::vector<Word> ws;
  ws.reserve(words.size());
  for (auto w : words) ws.push_back(Word::parse(w));
  return CylinderUnion(std::move(ws));
}

CylinderUnion CylinderUnion::tail(Word stem, int repeated, int terminal) {
  return CylinderUnion({}, TailDescriptor{std::move(stem), repeated, terminal});
}

bool CylinderUnion::overlaps(const Word& w) const {
  for (const Word& m : finite_part_)
    if (m.comparable(w)) return true;
  return tail_part_ && tail_overlaps(*tail_part_, w);
}

Rational map_apply(const MeasureSpec& spec, const Word& w, const Rational& x) {
  const Rational s = spec.contraction();
  Rational y = x;
  for (auto it = w.digits().rbegin(); it != w.digits().rend(); ++it) {
    check_digit(*it, spec.k);
    y = s * y + spec.translation(*it);
  }
  return y;
}

CylinderData cylinder_data(const MeasureSpec& spec, const Word& w) {
  const auto len = static_cast<unsigned>(w.length());
  CylinderData d;
  d.left = map_apply(spec, w, Rational(0));
  d.right = map_apply(spec, w, Rational(1));
  d.mass = rational_pow(spec.weight(), len);
  d.scale = rational_pow(spec.contraction(), len);
  d.centroid = map_apply(spec, w, make_rational(1, 2));
  return d;
}

Moments moments(const MeasureSpec& spec) {
  const Rational s = spec.contraction();
  Rational tbar(0), spread(0);
  for (int j = 1; j <= spec.k; ++j) {
    const Rational cj = s / 2 + spec.translation(j);
    tbar += spec.translation(j);
    spread += (cj - make_rational(1, 2)) * (cj - make_rational(1, 2));
  }
  Moments m;
  m.mean = (tbar / spec.k) / (1 - s);
  m.variance = (spread / spec.k) / (1 - s * s);
  return m;
}

UnionAggregates union_aggregates(const MeasureSpec& spec, const CylinderUnion& u) {
  if (u.empty()) throw std::domain_error("empty cylinder union");
  const Rational s = spec.contraction();
  const Rational V = moments(spec).variance;
  UnionAggregates agg{Rational(0), Rational(0), Rational(0), Rational(0)};

  for (const Word& w : u.finite_part()) {
    const auto len = static_cast<unsigned>(w.length());
    const Rational p = rational_pow(spec.weight(), len);
    const Rational sc2 = rational_pow(s * s, len);
    const Rational c = map_apply(spec, w, make_rational(1, 2));
    agg.mass += p;
    agg.first += p * c;
    agg.second += p * (sc2 * V + c * c);
    agg.scale_sq += p * sc2;
  }

  if (u.tail_part()) {
    const TailDescriptor& t = *u.tail_part();
    check_digit(t.repeated, spec.k);
    check_digit(t.terminal, spec.k);
    const auto stem_len = static_cast<unsigned>(t.stem.length());
    const Rational k(spec.k);
    // Member m has word w r^m t; its centroid is A + B s^m where A is the
    // image of S_r's fixed point under S_w. All sums are geometric.
    const Rational fix = spec.translation(t.repeated) / (1 - s);
    const Rational y0 = s / 2 + spec.translation(t.terminal);
    const Rational a = map_apply(spec, t.stem, fix);
    const Rational b = rational_pow(s, stem_len) * (y0 - fix);
    const Rational common = rational_pow(1 / k, stem_len + 1);
    const Rational geo0 = 1 / (1 - 1 / k);
    const Rational geo1 = 1 / (1 - s / k);
    const Rational geo2 = 1 / (1 - s * s / k);
    const Rational mass = common * geo0;
    const Rational first = common * (a * geo0 + b * geo1);
    const Rational quad = common * (a * a * geo0 + 2 * a * b * geo1 + b * b * geo2);
    const Rational scale_sq = rational_pow(s * s, stem_len + 1) * common * geo2;
    agg.mass += mass;
    agg.first += first;
    agg.second += V * scale_sq + quad;
    agg.scale_sq += scale_sq;
  }
  return agg;
}

MassCentroid union_mass_centroid(const MeasureSpec& spec, const CylinderUnion& u) {
  const UnionAggregates agg = union_aggregates(spec, u);
  return MassCentroid{agg.mass, agg.first / agg.mass};
}

Rational union_distortion_about(const MeasureSpec& spec, const CylinderUnion& u,
                                const Rational& x0) {
  const UnionAggregates agg = union_aggregates(spec, u);
  return agg.second - 2 * x0 * agg.first + x0 * x0 * agg.mass;
}

HalfSplitStats half_split_stats(const MeasureSpec& spec) {
  if (spec.k != 3) throw std::domain_error("half-split statistics require the triadic measure");
  const CylinderUnion left = CylinderUnion::tail(Word{}, 2, 1);
  const CylinderUnion right = CylinderUnion::tail(Word{}, 2, 3);
  HalfSplitStats stats;
  stats.a1 = union_mass_centroid(spec, left).centroid;
  stats.a2 = union_mass_centroid(spec, right).centroid;
  stats.distortion = union_distortion_about(spec, left, stats.a1) +
                     union_distortion_about(spec, right, stats.a2);
  return stats;
}

}  // namespace cantorq
