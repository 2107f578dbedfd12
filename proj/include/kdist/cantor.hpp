#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kdist/interval_union.hpp"
#include "kdist/point_set.hpp"

namespace kdist {

/// Digit-restricted Cantor set C_{2m}: base-2m expansions using only the even
/// digits 0, 2, ..., 2m - 2, truncated at depth n.
struct CantorSpec {
  int m = 2;
  int depth = 1;

  void validate() const;
  /// m^depth
  std::uint64_t cell_count() const;
  /// (2m)^depth, the common denominator of every endpoint
  std::int64_t denominator() const;
  /// Left endpoints of the depth-n cells as numerators over denominator().
  std::vector<std::int64_t> left_endpoints() const;
};

/// Depth-n iterate: m^n intervals of length (2m)^{-n}.
IntervalUnion cantor_build(const CantorSpec& spec);

struct DifferenceCover {
  IntervalUnion merged;  ///< cover of {|x - y|} over the iterate
  std::uint64_t pre_merge_count = 0;  ///< (2m - 1)^n signed-difference intervals
  Rational pre_merge_length;          ///< 2 (2m - 1)^n (2m)^{-n}
};

/// Covers the absolute difference set of the depth-n iterate by enumerating
/// digit differences. Needs (2m - 1)^n <= 10^7.
DifferenceCover difference_cover(const CantorSpec& spec);

struct BoxDimResult {
  double dimension = 0.0;
  double residual = 0.0;
  /// (k, N(2^{-k})) per dyadic level
  std::vector<std::pair<int, std::uint64_t>> counts;
};

/// Box-counting dimension from dyadic levels k (cells [j 2^{-k}, (j+1) 2^{-k})
/// meeting the set). Needs at least three levels.
BoxDimResult box_dim(const IntervalUnion& set, std::span<const int> levels);
/// Same for the product of `copies` copies of a set (counts multiply).
BoxDimResult box_dim_product(const IntervalUnion& factor, int copies, std::span<const int> levels);
/// Points of [0, 1]^d.
BoxDimResult box_dim(const PointSet& points, std::span<const int> levels);

/// Dyadic levels 1..k_max, with k_max the resolution of a depth-n iterate.
std::vector<int> dyadic_levels(const CantorSpec& spec);

}  // namespace kdist
