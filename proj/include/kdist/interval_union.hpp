#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kdist/rational.hpp"

namespace kdist {

struct Interval {
  Rational lo;
  Rational hi;
};

/// Finite union of closed intervals with exact rational endpoints, kept sorted
/// and pairwise disjoint (overlapping or touching intervals are merged).
class IntervalUnion {
 public:
  IntervalUnion() = default;

  static IntervalUnion from_intervals(std::vector<Interval> intervals);
  /// Intervals [a / den, b / den]; merging happens in integer arithmetic.
  static IntervalUnion from_scaled(std::vector<std::pair<std::int64_t, std::int64_t>> intervals, std::int64_t den);

  const std::vector<Interval>& intervals() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  Rational total_length() const;

  bool contains(const Rational& x) const;
  /// Every interval of other lies inside one interval of this union.
  bool contains(const IntervalUnion& other) const;
  IntervalUnion clipped(const Rational& lo, const Rational& hi) const;
  IntervalUnion united(const IntervalUnion& other) const;

  /// CSV with header "a,b" and exact "p/q" endpoints.
  std::string to_csv() const;

 private:
  std::vector<Interval> parts_;
};

}  // namespace kdist
