#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantorq/rational.hpp"

namespace cantorq {

/// Finite address of a cylinder interval: a sequence of digits in
/// {1..k}, first digit outermost. The empty word addresses [0, 1].
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> digits);

  /// Parses digit characters '1'..'9' ("21" -> digits {2, 1}).
  static Word parse(std::string_view text);

  const std::vector<int>& digits() const { return digits_; }
  std::size_t length() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  std::string str() const;

  bool is_prefix_of(const Word& other) const;
  /// Two cylinders are disjoint iff neither word is a prefix of the other.
  bool comparable(const Word& other) const;

  Word extended(int digit) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.digits_ <=> b.digits_; }

 private:
  std::vector<int> digits_;
};

/// The k-branch iterated function system S_j(x) = x/(2k-1) + 2(j-1)/(2k-1)
/// with uniform weights 1/k. Branch images of [0,1] are pairwise disjoint
/// and separated by gaps of one contraction length.
struct MeasureSpec {
  int k;

  explicit MeasureSpec(int branches);
  static MeasureSpec triadic() { return MeasureSpec(3); }

  Rational contraction() const { return make_rational(1, 2 * k - 1); }
  Rational translation(int j) const;  // j in 1..k
  Rational weight() const { return make_rational(1, k); }
};

/// Geometric tail of cylinders J_{wt}, J_{wrt}, J_{wrrt}, ... for stem w,
/// repeated digit r and terminal digit t. Requires t != r so the listed
/// cylinders are pairwise disjoint.
struct TailDescriptor {
  Word stem;
  int repeated;
  int terminal;
};

/// A finite union of pairwise-disjoint cylinders, optionally together
/// with one geometric tail. Disjointness is validated on construction.
class CylinderUnion {
 public:
  explicit CylinderUnion(std::vector<Word> finite_part,
                         std::optional<TailDescriptor> tail_part = std::nullopt);

  /// Convenience: finite union from digit strings, e.g. {"1", "21"}.
  static CylinderUnion of(std::initializer_list<std::string_view> words);
  static CylinderUnion whole_space() { return CylinderUnion({Word{}}); }
  static CylinderUnion tail(Word stem, int repeated, int terminal);

  const std::vector<Word>& finite_part() const { return finite_part_; }
  const std::optional<TailDescriptor>& tail_part() const { return tail_part_; }
  bool empty() const { return finite_part_.empty() && !tail_part_; }

  /// True when J_w meets the union (w is comparable with some member).
  bool overlaps(const Word& w) const;

 private:
  std::vector<Word> finite_part_;
  std::optional<TailDescriptor> tail_part_;
};

// ---------------------------------------------------------------------------
// Operations

/// S_w(x), exactly; the empty word is the identity.
Rational map_apply(const MeasureSpec& spec, const Word& w, const Rational& x);

struct CylinderData {
  Rational left, right;  // [S_w(0), S_w(1)]
  Rational mass;         // k^-|w|
  Rational scale;        // s^|w|
  Rational centroid;     // S_w(1/2)
};
CylinderData cylinder_data(const MeasureSpec& spec, const Word& w);

struct Moments {
  Rational mean;
  Rational variance;
};
/// mean = 1/2 by symmetry; variance solves the self-similarity fixed
/// point V = s^2 V + (1/k) sum_j (S_j(1/2) - 1/2)^2.
Moments moments(const MeasureSpec& spec);

/// Aggregate sums over a union: mass      = sum p_w,
///                              first     = sum p_w S_w(1/2)  (= int_u x dP),
///                              second    = int_u x^2 dP,
///                              scale_sq  = sum p_w s_w^2.
/// Tail parts contribute in closed form (geometric series).
struct UnionAggregates {
  Rational mass;
  Rational first;
  Rational second;
  Rational scale_sq;
};
UnionAggregates union_aggregates(const MeasureSpec& spec, const CylinderUnion& u);

struct MassCentroid {
  Rational mass;
  Rational centroid;
};
MassCentroid union_mass_centroid(const MeasureSpec& spec, const CylinderUnion& u);

/// int_u (x - x0)^2 dP, exactly. Per cylinder this is the closed form
/// p_w (s_w^2 V + (S_w(1/2) - x0)^2).
Rational union_distortion_about(const MeasureSpec& spec, const CylinderUnion& u,
                                const Rational& x0);

struct HalfSplitStats {
  Rational a1;          // E(X | [0, 1/2])
  Rational a2;          // E(X | [1/2, 1])
  Rational distortion;  // distortion of the codebook {a1, a2}
};
/// Conditional means of the two halves and the distortion of the
/// half-split codebook, via the tails J_1 u J_21 u J_221 u ... and its
/// mirror image. Triadic only.
HalfSplitStats half_split_stats(const MeasureSpec& spec);

}  // namespace cantorq
