#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kdist/convex_body.hpp"
#include "kdist/point_set.hpp"

namespace kdist {

enum class DistanceMode { exact_rational, float_tol };

std::string to_string(DistanceMode mode);

struct DistanceOptions {
  /// Use the translation fast path for lattice-derived point sets.
  bool fast_path = true;
  /// Relative tolerance when merging float distances.
  double rel_tol = 1e-9;
  /// Largest number of unordered pairs the all-pairs sweep may visit.
  std::uint64_t pair_cap = 200'000'000;
};

/// Distinct nonzero K-distances of a finite point set.
struct DistanceSet {
  std::vector<double> values;                 ///< strictly increasing
  std::vector<std::uint64_t> multiplicities;  ///< unordered pairs per value
  double min_gap = 0.0;  ///< +inf when fewer than two values
  bool exact = false;
  /// Exact values ("p/q", or "sqrt(p/q)" for Euclidean gauges) in exact mode.
  std::vector<std::string> exact_values;
  bool used_fast_path = false;

  std::size_t count() const { return values.size(); }
  std::uint64_t total_pairs() const;
};

/// Distinct values of ||x - y||_K over unordered pairs of distinct points.
///
/// Exact mode needs rational points and a body with rational gauge data (l^1,
/// l^inf, Euclidean balls, boxes, rational polygons); anything else throws
/// CapabilityError. Float mode merges values within the relative tolerance.
DistanceSet distance_set(const PointSet& points, const ConvexBody& body, DistanceMode mode,
                         const DistanceOptions& options = {});

}  // namespace kdist
