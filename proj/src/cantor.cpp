#include "kdist/cantor.hpp"

#include <algorithm>
#include <cmath>

#include "kdist/decay_fit.hpp"
#include "kdist/error.hpp"

namespace kdist {

namespace {

constexpr std::uint64_t kMaxCells = 10'000'000;

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t limit, const char* what) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > limit / base) throw RangeError(std::string(what) + " exceeds " + std::to_string(limit));
    v *= base;
  }
  return v;
}

BoxDimResult fit_counts(std::vector<std::pair<int, std::uint64_t>> counts, double power) {
  if (counts.size() < 3) throw InsufficientDataError("box counting needs at least three dyadic levels");
  std::vector<double> x, y;
  for (const auto& [k, n] : counts) {
    x.push_back(k * std::log(2.0));
    y.push_back(power * std::log(static_cast<double>(n)));
  }
  const LineFit fit = least_squares(x, y);
  BoxDimResult r;
  r.dimension = fit.slope;
  r.residual = fit.residual;
  r.counts = std::move(counts);
  if (power != 1.0) {
    for (auto& [k, n] : r.counts) n = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), power)));
  }
  return r;
}

void check_levels(std::span<const int> levels) {
  for (int k : levels) {
    if (k < 0 || k > 62) throw RangeError("dyadic level out of range [0, 62]: " + std::to_string(k));
  }
}

std::uint64_t interval_cells(const IntervalUnion& set, int k) {
  const mpz_class scale = mpz_class(1) << k;
  std::uint64_t count = 0;
  bool have_last = false;
  mpz_class last;
  for (const auto& iv : set.intervals()) {
    mpz_class lo, hi;
    const mpz_class a = iv.lo.get_num() * scale, b = iv.hi.get_num() * scale;
    mpz_fdiv_q(lo.get_mpz_t(), a.get_mpz_t(), iv.lo.get_den().get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), b.get_mpz_t(), iv.hi.get_den().get_mpz_t());
    hi -= 1;
    if (hi < lo) hi = lo;
    if (have_last && lo <= last) lo = last + 1;
    if (lo <= hi) {
      const mpz_class n = hi - lo + 1;
      count += n.get_ui();
      last = hi;
      have_last = true;
    }
  }
  return count;
}

}  // namespace

void CantorSpec::validate() const {
  if (m < 2) throw ArgumentError("Cantor base parameter m must be >= 2");
  if (depth < 1) throw ArgumentError("Cantor depth must be >= 1");
  checked_power(static_cast<std::uint64_t>(m), depth, kMaxCells, "m^n");
}

std::uint64_t CantorSpec::cell_count() const {
  return checked_power(static_cast<std::uint64_t>(m), depth, kMaxCells, "m^n");
}

std::int64_t CantorSpec::denominator() const {
  return static_cast<std::int64_t>(
      checked_power(2 * static_cast<std::uint64_t>(m), depth, std::uint64_t{1} << 62, "(2m)^n"));
}

std::vector<std::int64_t> CantorSpec::left_endpoints() const {
  validate();
  std::vector<std::int64_t> ends{0};
  std::int64_t scale = denominator();
  for (int level = 0; level < depth; ++level) {
    scale /= 2 * m;
    std::vector<std::int64_t> next;
    next.reserve(ends.size() * static_cast<std::size_t>(m));
    for (auto e : ends) {
      for (int digit = 0; digit < 2 * m; digit += 2) next.push_back(e + digit * scale);
    }
    ends = std::move(next);
  }
  return ends;
}

IntervalUnion cantor_build(const CantorSpec& spec) {
  const auto ends = spec.left_endpoints();
  std::vector<std::pair<std::int64_t, std::int64_t>> iv;
  iv.reserve(ends.size());
  for (auto e : ends) iv.emplace_back(e, e + 1);
  return IntervalUnion::from_scaled(std::move(iv), spec.denominator());
}

DifferenceCover difference_cover(const CantorSpec& spec) {
  spec.validate();
  const std::uint64_t count =
      checked_power(2 * static_cast<std::uint64_t>(spec.m) - 1, spec.depth, kMaxCells, "(2m-1)^n");
  const std::int64_t den = spec.denominator();
  // signed digit differences 2j, |j| < m, at every level
  std::vector<std::int64_t> diffs{0};
  std::int64_t scale = den;
  for (int level = 0; level < spec.depth; ++level) {
    scale /= 2 * spec.m;
    std::vector<std::int64_t> next;
    next.reserve(diffs.size() * static_cast<std::size_t>(2 * spec.m - 1));
    for (auto d : diffs) {
      for (int j = -(spec.m - 1); j <= spec.m - 1; ++j) next.push_back(d + 2 * j * scale);
    }
    diffs = std::move(next);
  }
  DifferenceCover out;
  out.pre_merge_count = diffs.size();
  if (out.pre_merge_count != count) throw std::logic_error("difference enumeration miscounted");
  // each signed interval [d - 1, d + 1] / den has length 2 / den
  out.pre_merge_length = Rational(mpz_class(2) * mpz_class(static_cast<unsigned long>(count)),
                                  mpz_class(static_cast<long>(den)));
  out.pre_merge_length.canonicalize();
  std::vector<std::pair<std::int64_t, std::int64_t>> folded;
  folded.reserve(diffs.size());
  for (auto d : diffs) {
    const std::int64_t a = d < 0 ? -d : d;
    folded.emplace_back(std::max<std::int64_t>(0, a - 1), a + 1);
  }
  out.merged = IntervalUnion::from_scaled(std::move(folded), den);
  return out;
}

BoxDimResult box_dim(const IntervalUnion& set, std::span<const int> levels) {
  return box_dim_product(set, 1, levels);
}

BoxDimResult box_dim_product(const IntervalUnion& factor, int copies, std::span<const int> levels) {
  if (copies < 1) throw ArgumentError("product needs at least one copy");
  if (factor.empty()) throw ArgumentError("box counting of an empty set");
  check_levels(levels);
  std::vector<std::pair<int, std::uint64_t>> counts;
  for (int k : levels) counts.emplace_back(k, interval_cells(factor, k));
  return fit_counts(std::move(counts), static_cast<double>(copies));
}

BoxDimResult box_dim(const PointSet& points, std::span<const int> levels) {
  if (points.size() == 0) throw ArgumentError("box counting of an empty set");
  check_levels(levels);
  const std::size_t d = static_cast<std::size_t>(points.dim());
  for (double v : points.flat()) {
    if (v < 0.0 || v > 1.0) throw RangeError("box counting expects points in the unit cube");
  }
  std::vector<std::pair<int, std::uint64_t>> counts;
  std::vector<std::int64_t> keys(points.size() * d);
  for (int k : levels) {
    const double scale = std::ldexp(1.0, k);
    const auto top = static_cast<std::int64_t>(scale) - 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        keys[i * d + j] = std::min(top, static_cast<std::int64_t>(std::floor(points.point(i)[j] * scale)));
      }
    }
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(keys.begin() + static_cast<std::ptrdiff_t>(a * d),
                                          keys.begin() + static_cast<std::ptrdiff_t>(a * d + d),
                                          keys.begin() + static_cast<std::ptrdiff_t>(b * d),
                                          keys.begin() + static_cast<std::ptrdiff_t>(b * d + d));
    };
    std::sort(order.begin(), order.end(), less);
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || less(order[i - 1], order[i])) ++n;
    }
    counts.emplace_back(k, n);
  }
  return fit_counts(std::move(counts), 1.0);
}

std::vector<int> dyadic_levels(const CantorSpec& spec) {
  spec.validate();
  const int kmax = static_cast<int>(std::ceil(spec.depth * std::log2(2.0 * spec.m) - 1e-9));
  std::vector<int> out;
  for (int k = 1; k <= std::min(kmax, 62); ++k) out.push_back(k);
  return out;
}

}  // namespace kdist
