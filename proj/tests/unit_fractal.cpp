#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "kdist/cantor.hpp"
#include "kdist/convex_body.hpp"
#include "kdist/dio.hpp"
#include "kdist/distance_set.hpp"
#include "kdist/error.hpp"
#include "kdist/interval_union.hpp"
#include "kdist/measure.hpp"

using namespace kdist;
using std::numbers::pi;

namespace {

Rational pow_ratio(long num, long den, int n) {
  mpz_class a = 1, b = 1;
  for (int i = 0; i < n; ++i) {
    a *= num;
    b *= den;
  }
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Left endpoints of C_{2m} at depth n by explicit digit expansion.
std::set<Rational> cantor_left_ends(int m, int n) {
  std::set<Rational> out;
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (;;) {
    Rational x = 0, scale = 1;
    for (int d : digits) {
      scale /= 2 * m;
      x += scale * d;
    }
    out.insert(x);
    int k = n - 1;
    while (k >= 0 && digits[static_cast<std::size_t>(k)] == 2 * m - 2) digits[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
    digits[static_cast<std::size_t>(k)] += 2;
  }
  return out;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double bessel_j0(double x) {
  double s = 0.0;
  const int m = 2048;
  for (int k = 0; k < m; ++k) s += std::cos(x * std::sin(2 * pi * (k + 0.5) / m));
  return s / m;
}

}  // namespace

TEST_CASE("interval unions") {
  const auto u = IntervalUnion::from_intervals({{Rational(1, 2), Rational(3, 4)},
                                                {Rational(0), Rational(1, 4)},
                                                {Rational(1, 4), Rational(1, 3)},
                                                {Rational(5, 8), Rational(7, 8)}});
  REQUIRE(u.size() == 2);
  CHECK(u.intervals()[0].hi == Rational(1, 3));
  CHECK(u.intervals()[1].lo == Rational(1, 2));
  CHECK(u.total_length() == Rational(1, 3) + Rational(3, 8));
  CHECK(u.contains(Rational(7, 8)));
  CHECK_FALSE(u.contains(Rational(2, 5)));
  CHECK(u.contains(IntervalUnion::from_intervals({{Rational(1, 10), Rational(1, 5)}})));
  CHECK_FALSE(u.contains(IntervalUnion::from_intervals({{Rational(1, 10), Rational(2, 5)}})));
  CHECK(u.clipped(Rational(1, 5), Rational(6, 10)).total_length() == Rational(2, 15) + Rational(1, 10));
  CHECK(u.united(IntervalUnion::from_intervals({{Rational(1, 3), Rational(1, 2)}})).size() == 1);
  CHECK(u.to_csv() == "a,b\n0,1/3\n1/2,7/8\n");
  const auto s = IntervalUnion::from_scaled({{3, 5}, {0, 1}, {1, 2}}, 6);
  CHECK(s.size() == 2);
  CHECK(s.total_length() == Rational(2, 3));
  CHECK(IntervalUnion().total_length() == 0);
  CHECK_THROWS_AS(IntervalUnion::from_intervals({{Rational(1), Rational(0)}}), ArgumentError);
}

TEST_CASE("Cantor iterates match digit expansions") {
  for (int m : {2, 3}) {
    for (int n : {1, 2, 4}) {
      const CantorSpec spec{m, n};
      const IntervalUnion c = cantor_build(spec);
      const auto ends = cantor_left_ends(m, n);
      CHECK(spec.cell_count() == ends.size());
      CHECK(c.total_length() == pow_ratio(m, 2 * m, n));
      const Rational len = pow_ratio(1, 2 * m, n);
      for (const Rational& a : ends) {
        CHECK(c.contains(a));
        CHECK(c.contains(a + len));
        CHECK_FALSE(c.contains(a + len + len / 2));
      }
    }
  }
  CHECK_THROWS_AS(CantorSpec({1, 3}).validate(), ArgumentError);
  CHECK_THROWS_AS(CantorSpec({2, 0}).validate(), ArgumentError);
  CHECK_THROWS(CantorSpec({10, 8}).validate());
}

TEST_CASE("difference covers") {
  for (int n = 1; n <= 8; ++n) {
    const DifferenceCover d = difference_cover({2, n});
    CHECK(d.pre_merge_count == static_cast<std::uint64_t>(std::pow(3, n)));
    CHECK(d.pre_merge_length == 2 * pow_ratio(3, 4, n));
    CHECK(d.merged.total_length() <= d.pre_merge_length);
  }
  // random pairs of points of the iterate: every |x - y| lies in the cover
  const CantorSpec spec{2, 6};
  const DifferenceCover d = difference_cover(spec);
  const auto ends = spec.left_endpoints();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
  std::uniform_int_distribution<int> off(0, 64);
  const std::int64_t den = spec.denominator();
  for (int i = 0; i < 3000; ++i) {
    const Rational x = Rational(ends[pick(rng)] * 64 + off(rng), den * 64);
    const Rational y = Rational(ends[pick(rng)] * 64 + off(rng), den * 64);
    Rational diff = x - y;
    diff.canonicalize();
    CHECK(d.merged.contains(abs(diff)));
  }
}

TEST_CASE("box-counting dimensions") {
  const CantorSpec spec{2, 8};
  const IntervalUnion c = cantor_build(spec);
  const auto levels = dyadic_levels(spec);
  CHECK(levels.back() == 16);
  const BoxDimResult one = box_dim(c, levels);
  CHECK(one.dimension == doctest::Approx(0.5).epsilon(0.03));
  // at even levels k = 2j the count is exactly 2^j cells
  for (const auto& [k, n] : one.counts) {
    if (k % 2 == 0) CHECK(n == (std::uint64_t{1} << (k / 2)));
  }
  CHECK(box_dim_product(c, 2, levels).dimension == doctest::Approx(1.0).epsilon(0.03));
  const IntervalUnion unit = IntervalUnion::from_intervals({{Rational(0), Rational(1)}});
  const std::vector<int> ks{1, 2, 3, 4, 5};
  CHECK(box_dim(unit, ks).dimension == doctest::Approx(1.0));
  CHECK(box_dim_product(unit, 3, ks).dimension == doctest::Approx(3.0));
  const PointSet grid = PointSet::lattice(64).scaled(1, 64);
  CHECK(box_dim(grid, ks).dimension == doctest::Approx(2.0).epsilon(0.02));
  CHECK_THROWS_AS(box_dim(unit, std::vector<int>{1, 2}), InsufficientDataError);
}

TEST_CASE("diophantine stages") {
  DioSpec spec;
  spec.q = 4;
  spec.s = 1.0;
  const DioSet e = dio_build(spec);
  CHECK(e.cube_count() == 25);
  CHECK(e.half_side == Rational(1, 16));
  CHECK(e.disjoint);
  REQUIRE(e.product_factors.has_value());
  // per axis: [0, 1/16] and [1 - 1/16, 1] plus three full cubes of side 1/8
  CHECK(e.product_factors->front().total_length() == Rational(1, 16) * 2 + Rational(3, 8));

  spec.s = 2.0;
  const DioSet big = dio_build(spec);
  CHECK(big.half_side == Rational(1, 4));
  CHECK_FALSE(big.disjoint);
  spec.s = 3.0;
  CHECK_THROWS_AS(dio_build(spec), ArgumentError);

  DioSpec rot;
  rot.family.kind = Provenance::rotated_lattice;
  rot.family.angle = 0.5;
  rot.q = 9;
  CHECK(dio_build(rot).cube_count() == PointSet::rotated_lattice(9, 0.5).size());

  spec.s = 1.0;
  const ConvexBody sq = ConvexBody::unit_square();
  const DeltaCover dc = delta_cover(spec, sq);
  CHECK(dc.count == distance_set(PointSet::lattice(4), sq, DistanceMode::float_tol).count());
  CHECK(dc.kappa == 1.0);
  CHECK(dc.interval_length == doctest::Approx(4.0 / 16.0));
  CHECK(dc.pre_merge_length == doctest::Approx(dc.count * dc.interval_length));
  CHECK(to_double(dc.cover.total_length()) <= dc.pre_merge_length + 1e-12);
  // every distance between points of two cubes lies in the cover or near zero
  const IntervalUnion all = dc.cover.united(dc.near_zero);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0 / 16, 1.0 / 16);
  std::uniform_int_distribution<int> c(0, 4);
  for (int i = 0; i < 2000; ++i) {
    const double x0 = c(rng) / 4.0 + u(rng), x1 = c(rng) / 4.0 + u(rng);
    const double y0 = c(rng) / 4.0 + u(rng), y1 = c(rng) / 4.0 + u(rng);
    const double dist = sq.gauge(Vec2{x0 - y0, x1 - y1});
    CHECK(all.contains(rational_from_double(dist)));
  }
  const DeltaCover de = delta_cover(spec, ConvexBody::unit_disk());
  CHECK(de.kappa == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("atomic measures") {
  const AtomicMeasure p = AtomicMeasure::point_mass({0.3, 0.2});
  const double xi[2] = {1.7, -2.2};
  CHECK(std::abs(p.fourier(xi)) == doctest::Approx(1.0));
  CHECK(p.total_mass() == 1);
  CHECK_THROWS_AS(AtomicMeasure::from_atoms({{0.0}, {1.0}}, {Rational(1, 2), Rational(1, 3)}), ArgumentError);

  const AtomicMeasure mu = natural_measure({2, 3}, 2);
  CHECK(mu.size() == 64);
  CHECK(mu.total_mass() == 1);
  REQUIRE(mu.factors() != nullptr);
  // product transform against the explicit double sum
  const AtomicMeasure& f = mu.factors()->front();
  std::complex<double> want = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double ph = -2 * pi * (f.point(i)[0] * xi[0] + f.point(j)[0] * xi[1]);
      want += to_double(f.weight(i) * f.weight(j)) * std::exp(std::complex<double>(0.0, ph));
    }
  }
  CHECK(std::abs(mu.fourier(xi) - want) < 1e-13);
  CHECK(f.point(0)[0] == doctest::Approx(1.0 / 128));
}

TEST_CASE("energy integrals against closed forms") {
  const AtomicMeasure p = AtomicMeasure::point_mass({0.0, 0.0});
  for (double gamma : {0.5, 1.0, 1.5}) {
    for (double T : {4.0, 16.0}) {
      const double want = 2 * pi * (std::pow(T, 2 - gamma) - 1) / (2 - gamma);
      CHECK(energy_integral(p, gamma, T) == doctest::Approx(want).epsilon(1e-10));
    }
  }
  // two atoms at distance 0.5: the ring average of |mu_hat|^2 is (1 + J0(2 pi r |v|)) / 2
  const AtomicMeasure two = AtomicMeasure::from_atoms({{0.1, 0.1}, {0.4, 0.5}}, {Rational(1, 2), Rational(1, 2)});
  const double gamma = 1.2, T = 12.0;
  const double want = simpson(
      [&](double r) { return 2 * pi * std::pow(r, 1 - gamma) * 0.5 * (1 + bessel_j0(2 * pi * r * 0.5)); }, 1.0, T,
      4000);
  CHECK(energy_integral(two, gamma, T) == doctest::Approx(want).epsilon(1e-9));

  const std::vector<double> Ts{4, 8, 16};
  const EnergyLadder L = energy_ladder(p, 1.0, Ts);
  CHECK(L.increments.size() == 2);
  CHECK(L.growing());
  CHECK_FALSE(L.plateauing());
  CHECK_THROWS_AS(energy_integral(p, 2.5, 4.0), ArgumentError);
  CHECK_THROWS_AS(energy_integral(p, 1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(energy_integral(natural_measure({2, 3}, 1), 0.5, 4.0), CapabilityError);
}
