#pragma once

#include <optional>
#include <vector>

#include "kdist/convex_body.hpp"
#include "kdist/distance_set.hpp"
#include "kdist/interval_union.hpp"
#include "kdist/point_set.hpp"

namespace kdist {

/// Stage E_q of the diophantine construction: cubes of half-side q^{-d/s}
/// centred at p / q for p in S_q = S intersected with [0, q]^d.
struct DioSpec {
  PointSetFamily family;
  int q = 1;
  double s = 1.0;

  void validate() const;
  /// q^{-d/s}; exact when d/s is an integer
  Rational half_side() const;
};

struct DioSet {
  int dim = 2;
  int q = 1;
  Rational half_side;
  /// cube centres p / q
  std::vector<std::vector<double>> centers;
  /// cubes pairwise disjoint: half_side < 1 / (2q), checked for lattice sources
  bool disjoint = false;
  /// For lattice sources, E is the product of one union per axis (each cube
  /// clipped to [0, 1]).
  std::optional<std::vector<IntervalUnion>> product_factors;

  std::size_t cube_count() const { return centers.size(); }
};

DioSet dio_build(const DioSpec& spec);

struct DeltaCover {
  /// one interval per distinct value v of Delta_K(S_q): v / q +- 2 kappa r
  IntervalUnion cover;
  std::size_t count = 0;  ///< #Delta_K(S_q)
  /// distances realized inside a single cube, [0, 2 kappa r]
  IntervalUnion near_zero;
  double kappa = 1.0;  ///< max gauge over the corners of [-1, 1]^d
  double interval_length = 0.0;  ///< 4 kappa r
  double pre_merge_length = 0.0;  ///< count * interval_length
};

/// Cover of Delta_K(E_q) built from the distinct distances of S_q.
DeltaCover delta_cover(const DioSpec& spec, const ConvexBody& body,
                       DistanceMode mode = DistanceMode::float_tol, const DistanceOptions& options = {});

}  // namespace kdist
