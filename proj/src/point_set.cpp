#include "kdist/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kdist/error.hpp"
#include "kdist/spatial_hash.hpp"

namespace kdist {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_from_bits(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

void check_q(int q) {
  if (q < 1) throw ArgumentError("lattice size q must be >= 1");
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::lattice: return "lattice";
    case Provenance::rotated_lattice: return "rotated";
    case Provenance::perturbed_lattice: return "perturbed";
    case Provenance::explicit_points: return "explicit";
  }
  return "unknown";
}

PointSet PointSet::lattice(int q, int dim) {
  check_q(q);
  if (dim < 1) throw ArgumentError("lattice dimension must be >= 1");
  PointSet s;
  s.provenance_ = Provenance::lattice;
  s.q_ = q;
  s.dim_ = dim;
  std::size_t n = 1;
  for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(q + 1);
  s.n_ = n;
  s.coords_.resize(n * static_cast<std::size_t>(dim));
  std::vector<std::int64_t> nums(n * static_cast<std::size_t>(dim));
  std::vector<std::int64_t> idx(static_cast<std::size_t>(dim), 0);
  for (std::size_t i = 0; i < n; ++i) {
    // last coordinate varies fastest; for d = 2 this is row-major with rows = first axis
    for (int j = 0; j < dim; ++j) {
      const auto k = i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j);
      nums[k] = idx[static_cast<std::size_t>(dim - 1 - j)];
      s.coords_[k] = static_cast<double>(nums[k]);
    }
    for (int j = 0; j < dim; ++j) {
      if (++idx[static_cast<std::size_t>(j)] <= q) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }
  s.numerators_ = std::move(nums);
  if (dim == 2) {
    for (int y = 0; y <= q; ++y) s.rows_.push_back({y, 0, q});
  }
  return s;
}

PointSet PointSet::rotated_lattice(int q, double angle) {
  check_q(q);
  PointSet s;
  s.provenance_ = Provenance::rotated_lattice;
  s.q_ = q;
  s.dim_ = 2;
  s.angle_ = angle;
  const long double c = std::cos(static_cast<long double>(angle));
  const long double sn = std::sin(static_cast<long double>(angle));
  s.cos_ = static_cast<double>(c);
  s.sin_ = static_cast<double>(sn);
  const long double Q = q;
  const long double tol = 1e-12L * std::max<long double>(1.0L, Q);

  // index m = rho^{-1} x for x in the corners of [0, q]^2
  long double ylo = std::numeric_limits<long double>::infinity(), yhi = -ylo;
  for (long double x : {0.0L, Q}) {
    for (long double y : {0.0L, Q}) {
      const long double my = -sn * x + c * y;
      ylo = std::min(ylo, my);
      yhi = std::max(yhi, my);
    }
  }
  // lo <= a * mx + b <= hi  ->  range of mx
  auto constrain = [&](long double a, long double b, long double& lo, long double& hi) {
    if (std::abs(a) < 1e-15L) {
      if (b < -tol || b > Q + tol) {
        lo = 1;
        hi = 0;
      }
      return;
    }
    long double u = (-tol - b) / a, v = (Q + tol - b) / a;
    if (u > v) std::swap(u, v);
    lo = std::max(lo, u);
    hi = std::min(hi, v);
  };
  for (auto my = static_cast<std::int64_t>(std::floor(ylo)) - 1; my <= static_cast<std::int64_t>(std::ceil(yhi)) + 1;
       ++my) {
    long double lo = -std::numeric_limits<long double>::infinity(), hi = -lo;
    const long double m = static_cast<long double>(my);
    constrain(c, -sn * m, lo, hi);   // x-coordinate c mx - s my
    constrain(sn, c * m, lo, hi);    // y-coordinate s mx + c my
    if (!(lo <= hi)) continue;
    const auto xlo = static_cast<std::int64_t>(std::ceil(lo));
    const auto xhi = static_cast<std::int64_t>(std::floor(hi));
    if (xlo > xhi) continue;
    s.rows_.push_back({my, xlo, xhi});
    for (std::int64_t mx = xlo; mx <= xhi; ++mx) {
      const long double X = c * static_cast<long double>(mx) - sn * m;
      const long double Y = sn * static_cast<long double>(mx) + c * m;
      s.coords_.push_back(static_cast<double>(X));
      s.coords_.push_back(static_cast<double>(Y));
    }
  }
  s.n_ = s.coords_.size() / 2;
  if (angle == 0.0) {
    std::vector<std::int64_t> nums;
    for (double v : s.coords_) nums.push_back(static_cast<std::int64_t>(v));
    s.numerators_ = std::move(nums);
  }
  return s;
}

PointSet PointSet::perturbed_lattice(int q, std::uint64_t seed, double jitter, int dim) {
  if (!(jitter >= 0.0)) throw ArgumentError("jitter must be non-negative");
  PointSet base = lattice(q, dim);
  PointSet s = base;
  s.provenance_ = Provenance::perturbed_lattice;
  s.seed_ = seed;
  s.jitter_ = jitter;
  s.rows_.clear();
  s.numerators_.reset();
  const auto d = static_cast<std::size_t>(dim);
  for (std::size_t i = 0; i < s.n_; ++i) {
    std::uint64_t h = splitmix64(seed);
    for (std::size_t j = 0; j < d; ++j) h = splitmix64(h ^ static_cast<std::uint64_t>((*base.numerators_)[i * d + j]));
    for (std::size_t j = 0; j < d; ++j) {
      h = splitmix64(h + j + 1);
      s.coords_[i * d + j] += jitter * (2.0 * unit_from_bits(h) - 1.0);
    }
  }
  s.dedupe();
  return s;
}

PointSet PointSet::from_points(const std::vector<std::vector<double>>& points) {
  PointSet s;
  s.dim_ = points.empty() ? 2 : static_cast<int>(points.front().size());
  if (s.dim_ < 1) throw ArgumentError("points need at least one coordinate");
  bool integral = true;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != s.dim_) throw ArgumentError("points have mixed dimensions");
    for (double v : p) {
      if (!std::isfinite(v)) throw ArgumentError("point coordinate is not finite");
      integral = integral && v == std::floor(v) && std::abs(v) < 9.0e15;
      s.coords_.push_back(v);
    }
  }
  s.n_ = points.size();
  if (integral) {
    std::vector<std::int64_t> nums;
    for (double v : s.coords_) nums.push_back(static_cast<std::int64_t>(v));
    s.numerators_ = std::move(nums);
  }
  s.dedupe();
  return s;
}

PointSet PointSet::from_rational(const std::vector<std::vector<std::int64_t>>& numerators,
                                 std::int64_t denominator) {
  if (denominator <= 0) throw ArgumentError("rational points need a positive denominator");
  PointSet s;
  s.dim_ = numerators.empty() ? 2 : static_cast<int>(numerators.front().size());
  std::vector<std::int64_t> nums;
  for (const auto& p : numerators) {
    if (static_cast<int>(p.size()) != s.dim_) throw ArgumentError("points have mixed dimensions");
    for (auto v : p) {
      nums.push_back(v);
      s.coords_.push_back(static_cast<double>(v) / static_cast<double>(denominator));
    }
  }
  s.n_ = numerators.size();
  s.numerators_ = std::move(nums);
  s.denominator_ = denominator;
  s.dedupe();
  return s;
}

void PointSet::dedupe() {
  const auto d = static_cast<std::size_t>(dim_);
  std::vector<std::size_t> order(n_);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    if (numerators_) {
      return std::lexicographical_compare(numerators_->begin() + static_cast<std::ptrdiff_t>(a * d),
                                          numerators_->begin() + static_cast<std::ptrdiff_t>(a * d + d),
                                          numerators_->begin() + static_cast<std::ptrdiff_t>(b * d),
                                          numerators_->begin() + static_cast<std::ptrdiff_t>(b * d + d));
    }
    return std::lexicographical_compare(coords_.begin() + static_cast<std::ptrdiff_t>(a * d),
                                        coords_.begin() + static_cast<std::ptrdiff_t>(a * d + d),
                                        coords_.begin() + static_cast<std::ptrdiff_t>(b * d),
                                        coords_.begin() + static_cast<std::ptrdiff_t>(b * d + d));
  };
  std::stable_sort(order.begin(), order.end(), less);
  std::vector<double> coords;
  std::vector<std::int64_t> nums;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && !less(order[k - 1], order[k]) && !less(order[k], order[k - 1])) continue;
    const std::size_t i = order[k];
    coords.insert(coords.end(), coords_.begin() + static_cast<std::ptrdiff_t>(i * d),
                  coords_.begin() + static_cast<std::ptrdiff_t>(i * d + d));
    if (numerators_) {
      nums.insert(nums.end(), numerators_->begin() + static_cast<std::ptrdiff_t>(i * d),
                  numerators_->begin() + static_cast<std::ptrdiff_t>(i * d + d));
    }
  }
  coords_ = std::move(coords);
  n_ = coords_.size() / d;
  if (numerators_) numerators_ = std::move(nums);
}

PointSet PointSet::scaled(std::int64_t num, std::int64_t den) const {
  if (num <= 0 || den <= 0) throw ArgumentError("scale factor must be a positive rational");
  PointSet s;
  s.dim_ = dim_;
  s.n_ = n_;
  s.coords_ = coords_;
  for (double& v : s.coords_) v = v * static_cast<double>(num) / static_cast<double>(den);
  if (numerators_) {
    std::vector<std::int64_t> nums = *numerators_;
    std::int64_t new_den = denominator_ * den;
    for (auto& v : nums) v *= num;
    std::int64_t g = new_den;
    for (auto v : nums) g = std::gcd(g, v < 0 ? -v : v);
    for (auto& v : nums) v /= g;
    s.numerators_ = std::move(nums);
    s.denominator_ = new_den / g;
    for (std::size_t i = 0; i < s.coords_.size(); ++i) {
      s.coords_[i] = static_cast<double>((*s.numerators_)[i]) / static_cast<double>(s.denominator_);
    }
  }
  return s;
}

PointSet PointSet::rotated(double angle) const {
  if (dim_ != 2) throw CapabilityError("rotation is implemented for planar point sets");
  const long double c = std::cos(static_cast<long double>(angle));
  const long double sn = std::sin(static_cast<long double>(angle));
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n_; ++i) {
    const long double x = coords_[2 * i], y = coords_[2 * i + 1];
    pts.push_back({static_cast<double>(c * x - sn * y), static_cast<double>(sn * x + c * y)});
  }
  PointSet s = from_points(pts);
  return s;
}

std::vector<double> PointSet::bbox_min() const {
  std::vector<double> lo(static_cast<std::size_t>(dim_), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n_; ++i) {
    for (int j = 0; j < dim_; ++j) lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], point(i)[static_cast<std::size_t>(j)]);
  }
  return lo;
}

std::vector<double> PointSet::bbox_max() const {
  std::vector<double> hi(static_cast<std::size_t>(dim_), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n_; ++i) {
    for (int j = 0; j < dim_; ++j) hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j)], point(i)[static_cast<std::size_t>(j)]);
  }
  return hi;
}

PointSet PointSetFamily::generate(int q) const {
  switch (kind) {
    case Provenance::lattice: return PointSet::lattice(q, dim);
    case Provenance::rotated_lattice:
      if (dim != 2) throw CapabilityError("rotated lattices are planar");
      return PointSet::rotated_lattice(q, angle);
    case Provenance::perturbed_lattice: return PointSet::perturbed_lattice(q, seed, jitter, dim);
    case Provenance::explicit_points: break;
  }
  throw ArgumentError("explicit point sets do not form a generated family");
}

std::string PointSetFamily::describe() const {
  std::string s = to_string(kind) + "(d=" + std::to_string(dim);
  if (kind == Provenance::rotated_lattice) s += ", angle=" + std::to_string(angle);
  if (kind == Provenance::perturbed_lattice) s += ", seed=" + std::to_string(seed) + ", jitter=" + std::to_string(jitter);
  return s + ")";
}

// ---------------------------------------------------------------------------
// spatial hash grid

SpatialHashGrid::SpatialHashGrid(const PointSet& points, double cell_size) : points_(&points), h_(cell_size) {
  if (!(cell_size > 0.0)) throw ArgumentError("hash grid cell size must be positive");
  origin_ = points.size() ? points.bbox_min() : std::vector<double>(static_cast<std::size_t>(points.dim()), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) cells_[cell_of(points.point(i))].push_back(static_cast<std::uint32_t>(i));
  for (const auto& [k, v] : cells_) keys_.push_back(k);
  std::sort(keys_.begin(), keys_.end());
}

SpatialHashGrid::Key SpatialHashGrid::cell_of(std::span<const double> x) const {
  Key k(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) k[j] = static_cast<std::int64_t>(std::floor((x[j] - origin_[j]) / h_));
  return k;
}

double SpatialHashGrid::min_pair_distance() const {
  const PointSet& pts = *points_;
  const std::size_t d = static_cast<std::size_t>(pts.dim());
  double best = std::numeric_limits<double>::infinity();
  if (pts.size() < 2) return best;
  // grid extent bounds the ring search
  std::int64_t extent = 0;
  for (const auto& k : keys_) {
    for (std::size_t j = 0; j < d; ++j) extent = std::max(extent, std::abs(k[j] - keys_.front()[j]));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Key home = cell_of(pts.point(i));
    for (std::int64_t r = 1; r <= extent + 1; ++r) {
      // scan the cube of cells with Chebyshev radius r around home
      Key k = home;
      for (std::size_t j = 0; j < d; ++j) k[j] -= r;
      while (true) {
        bool shell = false;
        for (std::size_t j = 0; j < d; ++j) shell = shell || std::abs(k[j] - home[j]) >= r - 1;
        if (shell || r == 1) {
          if (const auto* bk = bucket(k)) {
            for (auto o : *bk) {
              if (o == i) continue;
              double s = 0.0;
              for (std::size_t j = 0; j < d; ++j) {
                const double t = pts.point(i)[j] - pts.point(o)[j];
                s += t * t;
              }
              best = std::min(best, std::sqrt(s));
            }
          }
        }
        std::size_t j = 0;
        for (; j < d; ++j) {
          if (++k[j] <= home[j] + r) break;
          k[j] = home[j] - r;
        }
        if (j == d) break;
      }
      // anything outside radius r is at least r * h away
      if (best <= static_cast<double>(r) * h_) break;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

WellDistributedResult well_distributed_check(const PointSet& s, double C) {
  if (!(C > 0.0)) throw ArgumentError("well_distributed_check: C must be positive");
  WellDistributedResult res;
  res.side = C;
  if (s.size() == 0) {
    res.ok = false;
    return res;
  }
  const std::size_t d = static_cast<std::size_t>(s.dim());
  auto lo = s.bbox_min(), hi = s.bbox_max();
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] += C;
    hi[j] -= C;
  }
  const double step = C / 2.0;
  std::vector<std::int64_t> counts(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double span = hi[j] - lo[j] - C;
    if (span < -1e-12 * C) return res;  // no cube fits: nothing to check
    counts[j] = static_cast<std::int64_t>(std::floor(span / step + 1e-9)) + 1;
  }
  const SpatialHashGrid grid(s, C);
  std::vector<std::int64_t> idx(d, 0);
  std::vector<double> a(d), b(d);
  while (true) {
    for (std::size_t j = 0; j < d; ++j) {
      a[j] = lo[j] + step * static_cast<double>(idx[j]);
      b[j] = a[j] + C;
    }
    bool found = false;
    grid.for_each_in_box(a, b, [&](std::uint32_t) { found = true; });
    ++res.cubes_checked;
    if (!found) {
      res.ok = false;
      res.witness = a;
      return res;
    }
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++idx[j] < counts[j]) break;
      idx[j] = 0;
    }
    if (j == d) break;
  }
  return res;
}

SeparatedResult separated_check(const PointSet& s, double c) {
  if (!(c > 0.0)) throw ArgumentError("separated_check: c must be positive");
  const SpatialHashGrid grid(s, c);
  SeparatedResult res;
  res.min_distance = grid.min_pair_distance();
  res.ok = res.min_distance >= c * (1.0 - 1e-12);
  return res;
}

}  // namespace kdist
