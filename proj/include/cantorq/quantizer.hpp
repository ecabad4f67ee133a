#pragma once

#include <functional>
#include <vector>

#include "cantorq/measure.hpp"
#include "cantorq/rational.hpp"

namespace cantorq {

enum class Regime { A, B };

/// Level data for n: the unique ell with 3^ell <= n < 3^(ell+1).
/// Regime A covers 3^ell <= n <= 2*3^ell (boundary included), regime B
/// the rest of the band.
struct RegimeDescriptor {
  long n = 0;
  int ell = 0;
  Regime regime = Regime::A;
  long capacity = 1;  // 3^ell
};

/// ell(n) for any n >= 1.
int level_of(long n);
long pow3(int e);

/// Throws std::domain_error for n < 3 (one and two points have dedicated
/// accessors).
RegimeDescriptor regime_of(long n);

/// A set of distinct level-`level` words selecting which branch cylinders
/// receive the refined sub-codebook. Canonical order is lexicographic.
struct IndexSet {
  int level = 0;
  std::vector<Word> members;  // sorted, distinct

  static IndexSet empty(int level) { return IndexSet{level, {}}; }
  static IndexSet of(int level, std::initializer_list<std::string_view> words);
};

/// Required |I| for the regime of n.
long index_cardinality(const RegimeDescriptor& r);

/// A codebook together with its construction recipe.
struct Quantizer {
  std::vector<Rational> points;  // strictly increasing
  RegimeDescriptor regime;
  IndexSet index;
};

/// {1/2}: the one-point codebook is the mean.
Quantizer alpha1();
/// {9/50, 189/250}: conditional means of J_1 u J_21 and J_22 u J_23 u J_3.
Quantizer alpha2();
/// {1/10, 1/2, 9/10}: the three branch centroids.
Quantizer alpha3();

/// The candidate-optimal n-point codebook for index set I.
/// Regime A: branch centroids S_w(1/2) off I, scaled two-point codebooks
/// S_w(alpha2) on I. Regime B: S_w(alpha2) off I, S_w(alpha3) on I.
Quantizer optimal_set(long n, const IndexSet& I);

/// Number of admissible index sets: C(3^ell, |I|).
BigInt count_optimal_sets(long n);

/// Visits admissible index sets in lexicographic order until the visitor
/// returns false.
void for_each_index_set(long n, const std::function<bool(const IndexSet&)>& visit);

/// First `limit` index sets in lexicographic order.
std::vector<IndexSet> enumerate_index_sets(long n, std::size_t limit);

/// All 3^ell words of a level, lexicographically.
std::vector<Word> words_of_level(int ell);

}  // namespace cantorq
