#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "kdist/point_set.hpp"

namespace kdist {

/// Uniform hash grid over a point set: cell index = floor((x - origin) / h).
class SpatialHashGrid {
 public:
  using Key = std::vector<std::int64_t>;

  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (auto v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  SpatialHashGrid(const PointSet& points, double cell_size);

  double cell_size() const { return h_; }
  Key cell_of(std::span<const double> x) const;
  const std::vector<std::uint32_t>* bucket(const Key& k) const {
    const auto it = cells_.find(k);
    return it == cells_.end() ? nullptr : &it->second;
  }
  /// Occupied cells in lexicographic key order.
  const std::vector<Key>& keys() const { return keys_; }
  const PointSet& points() const { return *points_; }

  /// Visits indices of points inside the closed box [lo, hi].
  template <typename F>
  void for_each_in_box(std::span<const double> lo, std::span<const double> hi, F&& visit) const {
    const Key a = cell_of(lo), b = cell_of(hi);
    Key k = a;
    const std::size_t d = a.size();
    while (true) {
      if (const auto* bk = bucket(k)) {
        for (auto i : *bk) {
          const auto p = points_->point(i);
          bool inside = true;
          for (std::size_t j = 0; j < d && inside; ++j) inside = p[j] >= lo[j] && p[j] <= hi[j];
          if (inside) visit(i);
        }
      }
      std::size_t j = 0;
      for (; j < d; ++j) {
        if (++k[j] <= b[j]) break;
        k[j] = a[j];
      }
      if (j == d) break;
    }
  }

  /// Smallest Euclidean distance between two distinct points (+inf if n < 2).
  double min_pair_distance() const;

 private:
  const PointSet* points_;
  double h_;
  std::vector<double> origin_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells_;
  std::vector<Key> keys_;
};

}  // namespace kdist
