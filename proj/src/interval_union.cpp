#include "kdist/interval_union.hpp"

#include <algorithm>

#include "kdist/error.hpp"

namespace kdist {

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (iv.hi < iv.lo) throw ArgumentError("interval with hi < lo: [" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]");
  }
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalUnion u;
  for (auto& iv : intervals) {
    if (!u.parts_.empty() && iv.lo <= u.parts_.back().hi) {
      if (u.parts_.back().hi < iv.hi) u.parts_.back().hi = iv.hi;
    } else {
      u.parts_.push_back(std::move(iv));
    }
  }
  return u;
}

IntervalUnion IntervalUnion::from_scaled(std::vector<std::pair<std::int64_t, std::int64_t>> intervals,
                                         std::int64_t den) {
  if (den <= 0) throw ArgumentError("interval denominator must be positive");
  for (const auto& [a, b] : intervals) {
    if (b < a) throw ArgumentError("interval with hi < lo");
  }
  std::sort(intervals.begin(), intervals.end());
  std::vector<std::pair<std::int64_t, std::int64_t>> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }
  IntervalUnion u;
  u.parts_.reserve(merged.size());
  const mpz_class D(static_cast<long>(den));
  for (const auto& [a, b] : merged) {
    Rational lo(mpz_class(static_cast<long>(a)), D), hi(mpz_class(static_cast<long>(b)), D);
    lo.canonicalize();
    hi.canonicalize();
    u.parts_.push_back({std::move(lo), std::move(hi)});
  }
  return u;
}

Rational IntervalUnion::total_length() const {
  Rational total = 0;
  for (const auto& iv : parts_) total += iv.hi - iv.lo;
  return total;
}

bool IntervalUnion::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  --it;
  return x <= it->hi;
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
  for (const auto& iv : other.parts_) {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), iv.lo,
                               [](const Rational& v, const Interval& p) { return v < p.lo; });
    if (it == parts_.begin()) return false;
    --it;
    if (iv.hi > it->hi) return false;
  }
  return true;
}

IntervalUnion IntervalUnion::clipped(const Rational& lo, const Rational& hi) const {
  std::vector<Interval> out;
  for (const auto& iv : parts_) {
    Rational a = iv.lo < lo ? lo : iv.lo;
    Rational b = iv.hi > hi ? hi : iv.hi;
    if (a <= b) out.push_back({std::move(a), std::move(b)});
  }
  IntervalUnion u;
  u.parts_ = std::move(out);
  return u;
}

IntervalUnion IntervalUnion::united(const IntervalUnion& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return from_intervals(std::move(all));
}

std::string IntervalUnion::to_csv() const {
  std::string out = "a,b\n";
  for (const auto& iv : parts_) out += to_string(iv.lo) + "," + to_string(iv.hi) + "\n";
  return out;
}

}  // namespace kdist
