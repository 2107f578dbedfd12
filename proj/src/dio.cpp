#include "kdist/dio.hpp"

#include <cmath>

#include "kdist/error.hpp"

namespace kdist {

void DioSpec::validate() const {
  if (q < 1) throw ArgumentError("diophantine stage needs q >= 1");
  if (!(s > 0.0) || s > family.dim) throw ArgumentError("diophantine exponent s must lie in (0, d]");
}

Rational DioSpec::half_side() const {
  validate();
  const double ratio = family.dim / s;
  if (ratio == std::floor(ratio)) {
    mpz_class den = 1;
    for (int i = 0; i < static_cast<int>(ratio); ++i) den *= q;
    return Rational(mpz_class(1), den);
  }
  return rational_from_double(std::pow(static_cast<double>(q), -ratio));
}

DioSet dio_build(const DioSpec& spec) {
  spec.validate();
  const PointSet S = spec.family.generate(spec.q);
  DioSet out;
  out.dim = S.dim();
  out.q = spec.q;
  out.half_side = spec.half_side();
  const double inv_q = 1.0 / spec.q;
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::vector<double> c(S.point(i).begin(), S.point(i).end());
    for (double& v : c) v *= inv_q;
    out.centers.push_back(std::move(c));
  }
  // lattice centres are 1/q apart, so cubes are disjoint iff 2r < 1/q
  out.disjoint = out.half_side * 2 * spec.q < 1;
  if (spec.family.kind == Provenance::lattice) {
    std::vector<Interval> axis;
    for (int p = 0; p <= spec.q; ++p) {
      const Rational c(p, spec.q);
      axis.push_back({c - out.half_side, c + out.half_side});
    }
    const IntervalUnion factor = IntervalUnion::from_intervals(std::move(axis)).clipped(0, 1);
    out.product_factors = std::vector<IntervalUnion>(static_cast<std::size_t>(out.dim), factor);
  } else {
    // separation of a general source is only known numerically
    const double r = to_double(out.half_side);
    const SeparatedResult sep = separated_check(S, 1.0);
    out.disjoint = 2.0 * r < sep.min_distance * inv_q;
  }
  return out;
}

DeltaCover delta_cover(const DioSpec& spec, const ConvexBody& body, DistanceMode mode,
                       const DistanceOptions& options) {
  spec.validate();
  if (body.dim() != spec.family.dim) throw ArgumentError("body and point family dimensions differ");
  const PointSet S = spec.family.generate(spec.q);
  const DistanceSet ds = distance_set(S, body, mode, options);

  DeltaCover out;
  const std::size_t d = static_cast<std::size_t>(body.dim());
  std::vector<double> corner(d);
  out.kappa = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    for (std::size_t j = 0; j < d; ++j) corner[j] = (mask >> j) & 1 ? 1.0 : -1.0;
    out.kappa = std::max(out.kappa, body.gauge(std::span<const double>(corner)));
  }
  const double r = to_double(spec.half_side());
  const double w = 2.0 * out.kappa * r;
  out.interval_length = 2.0 * w;
  out.count = ds.count();
  out.pre_merge_length = static_cast<double>(out.count) * out.interval_length;
  std::vector<Interval> parts;
  parts.reserve(ds.count());
  for (double v : ds.values) {
    const double c = v / spec.q;
    parts.push_back({rational_from_double(std::max(0.0, c - w)), rational_from_double(c + w)});
  }
  out.cover = IntervalUnion::from_intervals(std::move(parts));
  out.near_zero = IntervalUnion::from_intervals({{Rational(0), rational_from_double(w)}});
  return out;
}

}  // namespace kdist
