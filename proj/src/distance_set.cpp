#include "kdist/distance_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kdist/error.hpp"
#include "kdist/parallel.hpp"
#include "kdist/rational.hpp"

namespace kdist {

namespace {

using u64 = std::uint64_t;
using i128 = int128;

template <typename K>
using Bag = std::vector<std::pair<K, u64>>;

template <typename K>
void compress(Bag<K>& bag) {
  std::sort(bag.begin(), bag.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < bag.size(); ++r) {
    if (w > 0 && bag[w - 1].first == bag[r].first) {
      bag[w - 1].second += bag[r].second;
    } else {
      bag[w++] = bag[r];
    }
  }
  bag.resize(w);
}

template <typename K>
Bag<K> merge_parts(std::vector<Bag<K>>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  Bag<K> all;
  all.reserve(total);
  for (auto& p : parts) {
    all.insert(all.end(), p.begin(), p.end());
    Bag<K>().swap(p);
  }
  compress(all);
  return all;
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Fraction fraction128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
  if (abs128(num) > lim || den > lim) {
    throw CapabilityError("exact distance does not fit in 64-bit rational arithmetic");
  }
  return Fraction(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

/// a/b < c/d for positive denominators
bool less_ratio(i128 a, i128 b, i128 c, i128 d) { return a * d < c * b; }

std::pair<std::int64_t, std::int64_t> exact_parts(double x, const char* what) {
  const Rational r = rational_from_double(x);
  if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p()) {
    throw CapabilityError(std::string(what) + " is not a small rational");
  }
  return {r.get_num().get_si(), r.get_den().get_si()};
}

/// Gauge of a rational vector delta / den, as an exact fraction. For the
/// Euclidean ball the fraction is the squared gauge.
class ExactGauge {
 public:
  explicit ExactGauge(const ConvexBody& body) {
    if (body.kind() == BodyKind::lp_ball && std::isinf(body.lp_exponent())) {
      kind_ = Kind::linf;
    } else if (body.kind() == BodyKind::lp_ball && body.lp_exponent() == 1.0) {
      kind_ = Kind::l1;
    } else if (body.is_euclidean_ball()) {
      kind_ = Kind::euclid;
      squared_ = true;
      const double r = body.kind() == BodyKind::lp_ball ? 1.0 : body.axes()[0];
      const auto [n, d] = exact_parts(r, "ball radius");
      rn_ = n;
      rd_ = d;
    } else if (body.kind() == BodyKind::box) {
      kind_ = Kind::box;
      for (double h : body.axes()) half_.push_back(exact_parts(h, "box half-width"));
    } else if (const auto* ex = body.exact_polygon()) {
      kind_ = Kind::polygon;
      D_ = ex->denominator;
      const auto& v = ex->numerators;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p0 = v[i];
        const auto& p1 = v[(i + 1) % v.size()];
        const i128 dx = static_cast<i128>(p1[0]) - p0[0];
        const i128 dy = static_cast<i128>(p1[1]) - p0[1];
        faces_.push_back({dy, -dx, dy * p0[0] - dx * p0[1]});
      }
    } else {
      throw CapabilityError("exact distances need an l^1, l^inf, Euclidean, box or rational polygon body; got " +
                            body.describe());
    }
  }

  bool squared() const { return squared_; }

  Fraction operator()(std::span<const std::int64_t> delta, std::int64_t den) const {
    switch (kind_) {
      case Kind::linf: {
        std::int64_t m = 0;
        for (auto v : delta) m = std::max(m, v < 0 ? -v : v);
        return fraction128(m, den);
      }
      case Kind::l1: {
        i128 s = 0;
        for (auto v : delta) s += v < 0 ? -v : v;
        return fraction128(s, den);
      }
      case Kind::euclid: {
        i128 s = 0;
        for (auto v : delta) s += static_cast<i128>(v) * v;
        return fraction128(s * rd_ * rd_, static_cast<i128>(den) * den * rn_ * rn_);
      }
      case Kind::box: {
        i128 bn = 0, bd = 1;
        for (std::size_t j = 0; j < delta.size(); ++j) {
          const i128 n = abs128(delta[j]) * half_[j].second;
          const i128 d = static_cast<i128>(den) * half_[j].first;
          if (less_ratio(bn, bd, n, d)) {
            bn = n;
            bd = d;
          }
        }
        return fraction128(bn, bd);
      }
      case Kind::polygon: {
        i128 bn = 0, bd = 1;
        for (const auto& f : faces_) {
          const i128 n = f.a * delta[0] + f.b * delta[1];
          if (less_ratio(bn, bd, n, f.off)) {
            bn = n;
            bd = f.off;
          }
        }
        return fraction128(bn * D_, bd * den);
      }
    }
    return {};
  }

 private:
  enum class Kind { linf, l1, euclid, box, polygon };
  struct Face {
    i128 a, b, off;
  };
  Kind kind_ = Kind::linf;
  bool squared_ = false;
  i128 rn_ = 1, rd_ = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> half_;
  std::vector<Face> faces_;
  i128 D_ = 1;
};

double planar_gauge(const ConvexBody& body, long double x, long double y) {
  return body.gauge(Vec2{static_cast<double>(x), static_cast<double>(y)});
}

/// Enumerates half-space lattice differences m in [-q, q]^d (first nonzero
/// coordinate positive) with multiplicity prod (q + 1 - |m_j|). Calls
/// emit(block, m, mult) with block = m_0, one block per parallel task.
template <typename K, typename Key>
std::vector<Bag<K>> lattice_differences(int q, int dim, Key key) {
  std::vector<Bag<K>> parts(static_cast<std::size_t>(q) + 1);
  const std::size_t d = static_cast<std::size_t>(dim);
  parallel_for(parts.size(), [&](std::size_t block) {
    Bag<K>& bag = parts[block];
    std::vector<std::int64_t> m(d, 0);
    m[0] = static_cast<std::int64_t>(block);
    // remaining coordinates run over [-q, q]; when m_0 = 0 recursion on the rest
    std::vector<std::int64_t> rest(d - 1, -q);
    if (d == 1) {
      if (m[0] > 0) bag.emplace_back(key(std::span<const std::int64_t>(m)), static_cast<u64>(q + 1 - m[0]));
      return;
    }
    while (true) {
      bool positive = m[0] > 0;
      if (!positive) {
        for (std::size_t j = 0; j < d - 1; ++j) {
          if (rest[j] != 0) {
            positive = rest[j] > 0;
            break;
          }
        }
      }
      if (positive) {
        u64 mult = static_cast<u64>(q + 1 - m[0]);
        for (std::size_t j = 0; j < d - 1; ++j) {
          m[j + 1] = rest[j];
          mult *= static_cast<u64>(q + 1 - (rest[j] < 0 ? -rest[j] : rest[j]));
        }
        bag.emplace_back(key(std::span<const std::int64_t>(m)), mult);
      }
      std::size_t j = d - 1;
      while (j > 0) {
        if (++rest[j - 1] <= q) break;
        rest[j - 1] = -q;
        --j;
      }
      if (j == 0) break;
    }
    compress(bag);
  });
  return parts;
}

/// Difference multiplicities of a row-convex planar index set. Emits, for each
/// index difference (dx, dy) in the upper half plane, the number of unordered
/// pairs realizing it.
template <typename K, typename Key>
std::vector<Bag<K>> row_differences(const std::vector<IndexRow>& rows, Key key) {
  std::int64_t ymin = rows.front().y, ymax = rows.front().y;
  std::int64_t xmin = rows.front().x_lo, xmax = rows.front().x_hi;
  for (const auto& r : rows) {
    ymin = std::min(ymin, r.y);
    ymax = std::max(ymax, r.y);
    xmin = std::min(xmin, r.x_lo);
    xmax = std::max(xmax, r.x_hi);
  }
  std::vector<const IndexRow*> by_y(static_cast<std::size_t>(ymax - ymin + 1), nullptr);
  for (const auto& r : rows) by_y[static_cast<std::size_t>(r.y - ymin)] = &r;
  const std::int64_t dxmin = xmin - xmax;
  const std::size_t width = static_cast<std::size_t>(2 * (xmax - xmin) + 1);

  std::vector<Bag<K>> parts(by_y.size());
  parallel_for(parts.size(), [&](std::size_t dy) {
    std::vector<std::int64_t> second(width + 3, 0);
    for (std::size_t y = 0; y + dy < by_y.size(); ++y) {
      const IndexRow* r1 = by_y[y];
      const IndexRow* r2 = by_y[y + dy];
      if (r1 == nullptr || r2 == nullptr) continue;
      const std::int64_t a = r1->x_lo, b = r1->x_hi, c = r2->x_lo, e = r2->x_hi;
      auto at = [&](std::int64_t dx) -> std::int64_t& { return second[static_cast<std::size_t>(dx - dxmin)]; };
      at(c - b) += 1;
      at(c - a + 1) -= 1;
      at(e - b + 1) -= 1;
      at(e - a + 2) += 1;
    }
    Bag<K>& bag = parts[dy];
    std::int64_t slope = 0, count = 0;
    for (std::size_t i = 0; i < width; ++i) {
      slope += second[i];
      count += slope;
      const std::int64_t dx = static_cast<std::int64_t>(i) + dxmin;
      if (count <= 0 || (dy == 0 && dx <= 0)) continue;
      bag.emplace_back(key(dx, static_cast<std::int64_t>(dy)), static_cast<u64>(count));
    }
    compress(bag);
  });
  return parts;
}

template <typename K, typename PairKey>
std::vector<Bag<K>> all_pairs(std::size_t n, const DistanceOptions& options, PairKey key) {
  const u64 pairs = n < 2 ? 0 : static_cast<u64>(n) * (n - 1) / 2;
  if (pairs > options.pair_cap) {
    throw CapabilityError("all-pairs sweep would visit " + std::to_string(pairs) + " pairs, above the cap of " +
                          std::to_string(options.pair_cap));
  }
  // interleaved rows balance the triangular workload
  const std::size_t blocks = std::min<std::size_t>(std::max<std::size_t>(n, 1), 512);
  std::vector<Bag<K>> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    Bag<K>& bag = parts[b];
    for (std::size_t i = b; i < n; i += blocks) {
      for (std::size_t j = i + 1; j < n; ++j) bag.emplace_back(key(i, j), 1);
      if (bag.size() > (1u << 22)) compress(bag);
    }
    compress(bag);
  });
  return parts;
}

void finish_gap(DistanceSet& ds) {
  ds.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ds.values.size(); ++i) ds.min_gap = std::min(ds.min_gap, ds.values[i] - ds.values[i - 1]);
}

DistanceSet exact_distances(const PointSet& pts, const ConvexBody& body, const DistanceOptions& options) {
  const auto* nums = pts.rational_numerators();
  if (nums == nullptr) throw CapabilityError("exact distances need rational points");
  const ExactGauge gauge(body);
  if (body.dim() != pts.dim()) throw ArgumentError("point set and body dimensions differ");

  DistanceSet ds;
  ds.exact = true;
  std::vector<Bag<Fraction>> parts;
  const std::size_t d = static_cast<std::size_t>(pts.dim());
  if (options.fast_path && pts.provenance() == Provenance::lattice) {
    ds.used_fast_path = true;
    parts = lattice_differences<Fraction>(pts.q(), pts.dim(),
                                          [&](std::span<const std::int64_t> m) { return gauge(m, 1); });
  } else if (options.fast_path && pts.provenance() == Provenance::rotated_lattice && pts.angle() == 0.0 &&
             pts.index_rows()) {
    ds.used_fast_path = true;
    parts = row_differences<Fraction>(*pts.index_rows(), [&](std::int64_t dx, std::int64_t dy) {
      const std::int64_t m[2] = {dx, dy};
      return gauge(m, 1);
    });
  } else {
    const std::int64_t den = pts.rational_denominator();
    parts = all_pairs<Fraction>(pts.size(), options, [&](std::size_t i, std::size_t j) {
      std::int64_t delta[8];
      std::vector<std::int64_t> big;
      std::int64_t* out = delta;
      if (d > 8) {
        big.resize(d);
        out = big.data();
      }
      for (std::size_t k = 0; k < d; ++k) out[k] = (*nums)[j * d + k] - (*nums)[i * d + k];
      return gauge(std::span<const std::int64_t>(out, d), den);
    });
  }
  const Bag<Fraction> merged = merge_parts(parts);
  for (const auto& [f, mult] : merged) {
    if (f.num == 0) continue;
    ds.values.push_back(gauge.squared() ? std::sqrt(f.value()) : f.value());
    ds.multiplicities.push_back(mult);
    const std::string s = f.den == 1 ? std::to_string(f.num) : std::to_string(f.num) + "/" + std::to_string(f.den);
    ds.exact_values.push_back(gauge.squared() ? "sqrt(" + s + ")" : s);
  }
  finish_gap(ds);
  return ds;
}

DistanceSet float_distances(const PointSet& pts, const ConvexBody& body, const DistanceOptions& options) {
  if (body.dim() != pts.dim()) throw ArgumentError("point set and body dimensions differ");
  DistanceSet ds;
  std::vector<Bag<double>> parts;
  const std::size_t d = static_cast<std::size_t>(pts.dim());
  if (options.fast_path && pts.provenance() == Provenance::lattice) {
    ds.used_fast_path = true;
    parts = lattice_differences<double>(pts.q(), pts.dim(), [&](std::span<const std::int64_t> m) {
      if (d == 2) return body.gauge(Vec2{static_cast<double>(m[0]), static_cast<double>(m[1])});
      std::vector<double> x(m.begin(), m.end());
      return body.gauge(std::span<const double>(x));
    });
  } else if (options.fast_path && pts.provenance() == Provenance::rotated_lattice && pts.index_rows()) {
    ds.used_fast_path = true;
    const long double c = std::cos(static_cast<long double>(pts.angle()));
    const long double s = std::sin(static_cast<long double>(pts.angle()));
    parts = row_differences<double>(*pts.index_rows(), [&](std::int64_t dx, std::int64_t dy) {
      const long double x = static_cast<long double>(dx), y = static_cast<long double>(dy);
      return planar_gauge(body, c * x - s * y, s * x + c * y);
    });
  } else {
    parts = all_pairs<double>(pts.size(), options, [&](std::size_t i, std::size_t j) {
      const auto a = pts.point(i), b = pts.point(j);
      if (d == 2) return body.gauge(Vec2{b[0] - a[0], b[1] - a[1]});
      std::vector<double> x(d);
      for (std::size_t k = 0; k < d; ++k) x[k] = b[k] - a[k];
      return body.gauge(std::span<const double>(x));
    });
  }
  const Bag<double> merged = merge_parts(parts);
  double anchor = 0.0;
  for (const auto& [v, mult] : merged) {
    if (v <= 0.0) continue;
    if (!ds.values.empty() && v - anchor <= options.rel_tol * anchor) {
      ds.multiplicities.back() += mult;
      continue;
    }
    anchor = v;
    ds.values.push_back(v);
    ds.multiplicities.push_back(mult);
  }
  finish_gap(ds);
  return ds;
}

}  // namespace

std::string to_string(DistanceMode mode) {
  return mode == DistanceMode::exact_rational ? "exact_rational" : "float_tol";
}

std::uint64_t DistanceSet::total_pairs() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), std::uint64_t{0});
}

DistanceSet distance_set(const PointSet& points, const ConvexBody& body, DistanceMode mode,
                         const DistanceOptions& options) {
  if (!(options.rel_tol >= 0.0)) throw ArgumentError("relative tolerance must be non-negative");
  return mode == DistanceMode::exact_rational ? exact_distances(points, body, options)
                                              : float_distances(points, body, options);
}

}  // namespace kdist
