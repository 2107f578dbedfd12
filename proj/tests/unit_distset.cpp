#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "kdist/convex_body.hpp"
#include "kdist/distance_set.hpp"
#include "kdist/error.hpp"
#include "kdist/growth.hpp"
#include "kdist/point_set.hpp"

using namespace kdist;
using std::numbers::pi;

namespace {

// Distinct nonzero a^2 + b^2 with 0 <= a, b <= q.
std::size_t sums_of_two_squares(long q) {
  std::set<long> s;
  for (long a = 0; a <= q; ++a) {
    for (long b = 0; b <= q; ++b) {
      if (a || b) s.insert(a * a + b * b);
    }
  }
  return s.size();
}

// Every pair, gauge values merged with the same relative tolerance.
std::vector<double> brute_values(const PointSet& s, const ConvexBody& K) {
  std::vector<double> v;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      std::vector<double> d(static_cast<std::size_t>(s.dim()));
      for (int k = 0; k < s.dim(); ++k) d[k] = s.point(i)[k] - s.point(j)[k];
      v.push_back(K.gauge(d));
    }
  }
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > 1e-9 * out.back()) out.push_back(x);
  }
  return out;
}

DistanceOptions brute() {
  DistanceOptions o;
  o.fast_path = false;
  return o;
}

}  // namespace

TEST_CASE("point set generators") {
  const PointSet l = PointSet::lattice(4);
  CHECK(l.size() == 25);
  CHECK(l.provenance() == Provenance::lattice);
  CHECK(PointSet::lattice(3, 3).size() == 64);

  const PointSet r0 = PointSet::rotated_lattice(10, 0.0);
  CHECK(r0.size() == 121);
  const PointSet r = PointSet::rotated_lattice(10, pi / 6);
  // brute-force count of rho(pi/6) Z^2 inside [0, 10]^2
  std::size_t want = 0;
  for (int a = -30; a <= 30; ++a) {
    for (int b = -30; b <= 30; ++b) {
      const double x = a * std::cos(pi / 6) - b * std::sin(pi / 6);
      const double y = a * std::sin(pi / 6) + b * std::cos(pi / 6);
      if (x >= -1e-9 && x <= 10 + 1e-9 && y >= -1e-9 && y <= 10 + 1e-9) ++want;
    }
  }
  CHECK(r.size() == want);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(r.point(i)[0] >= -1e-9);
    CHECK(r.point(i)[1] <= 10 + 1e-9);
  }

  const PointSet p1 = PointSet::perturbed_lattice(6, 99, 0.2);
  const PointSet p2 = PointSet::perturbed_lattice(6, 99, 0.2);
  CHECK(p1.flat() == p2.flat());
  CHECK(p1.flat() != PointSet::perturbed_lattice(6, 100, 0.2).flat());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      const double v = p1.point(i)[k];
      CHECK(std::abs(v - std::round(v)) <= 0.2);
    }
  }

  const PointSet dup = PointSet::from_points({{0, 0}, {1, 2}, {0, 0}});
  CHECK(dup.size() == 2);
  CHECK(dup.rational_numerators() != nullptr);
  const PointSet half = PointSet::lattice(2).scaled(1, 2);
  CHECK(half.rational_denominator() == 2);
  CHECK(half.bbox_max()[0] == 1.0);
}

TEST_CASE("nested families") {
  PointSetFamily f;
  f.kind = Provenance::perturbed_lattice;
  f.seed = 5;
  f.jitter = 0.3;
  const PointSet a = f.generate(5), b = f.generate(8);
  std::set<std::pair<double, double>> big;
  for (std::size_t i = 0; i < b.size(); ++i) big.insert({b.point(i)[0], b.point(i)[1]});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(big.count({a.point(i)[0], a.point(i)[1]}) == 1);
}

TEST_CASE("well-distributed and separated checks") {
  const PointSet l = PointSet::lattice(8);
  CHECK(well_distributed_check(l, 1.0).ok);
  CHECK(separated_check(l, 1.0).ok);
  CHECK_FALSE(separated_check(l, 1.01).ok);
  CHECK(separated_check(PointSet::rotated_lattice(12, 0.4), 1.0).ok);
  const PointSet holes = PointSet::from_points({{0, 0}, {4, 0}, {0, 4}, {4, 4}, {1, 1}});
  const auto w = well_distributed_check(holes, 1.0);
  CHECK_FALSE(w.ok);
  REQUIRE(w.witness.has_value());
  CHECK(separated_check(holes, 1.0).min_distance == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("lattice distance counts against oracles") {
  const ConvexBody sq = ConvexBody::unit_square(), l1 = ConvexBody::lp_ball(2, 1.0), disk = ConvexBody::unit_disk();
  for (int q : {1, 2, 7, 16, 33, 64}) {
    const PointSet s = PointSet::lattice(q);
    const DistanceSet fast = distance_set(s, sq, DistanceMode::float_tol);
    CHECK(fast.used_fast_path);
    CHECK(fast.count() == static_cast<std::size_t>(q));
    CHECK(distance_set(s, sq, DistanceMode::float_tol, brute()).count() == static_cast<std::size_t>(q));
    CHECK(distance_set(s, sq, DistanceMode::exact_rational).count() == static_cast<std::size_t>(q));
    CHECK(distance_set(s, l1, DistanceMode::float_tol).count() == static_cast<std::size_t>(2 * q));
    const std::size_t ss = sums_of_two_squares(q);
    CHECK(distance_set(s, disk, DistanceMode::float_tol).count() == ss);
    CHECK(distance_set(s, disk, DistanceMode::exact_rational).count() == ss);
    CHECK(distance_set(s, disk, DistanceMode::float_tol, brute()).count() == ss);
    CHECK(fast.total_pairs() == s.size() * (s.size() - 1) / 2);
  }
  const DistanceSet e = distance_set(PointSet::lattice(2), disk, DistanceMode::exact_rational);
  CHECK(e.exact);
  CHECK(e.exact_values == std::vector<std::string>{"sqrt(1)", "sqrt(2)", "sqrt(4)", "sqrt(5)", "sqrt(8)"});
  CHECK(e.multiplicities == std::vector<std::uint64_t>{12, 8, 6, 8, 2});
  const DistanceSet m = distance_set(PointSet::lattice(2), sq, DistanceMode::exact_rational);
  CHECK(m.exact_values == std::vector<std::string>{"1", "2"});
  CHECK(m.min_gap == 1.0);
}

TEST_CASE("three-dimensional lattice") {
  const PointSet s = PointSet::lattice(5, 3);
  const ConvexBody cube = ConvexBody::lp_ball(3, std::numeric_limits<double>::infinity());
  CHECK(distance_set(s, cube, DistanceMode::float_tol).count() == 5);
  const ConvexBody ball = ConvexBody::euclidean_ball(3);
  std::set<int> sums;
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b)
      for (int c = 0; c <= 5; ++c)
        if (a || b || c) sums.insert(a * a + b * b + c * c);
  CHECK(distance_set(s, ball, DistanceMode::exact_rational).count() == sums.size());
  const DistanceSet f = distance_set(s, ball, DistanceMode::float_tol);
  const DistanceSet b = distance_set(s, ball, DistanceMode::float_tol, brute());
  CHECK(f.values == b.values);
  CHECK(f.multiplicities == b.multiplicities);
}

TEST_CASE("rotated lattice fast path agrees with the all-pairs sweep") {
  const ConvexBody bodies[] = {ConvexBody::unit_square(), ConvexBody::unit_disk(), ConvexBody::ellipsoid({2.0, 1.0})};
  for (double angle : {pi / 6, 0.3, 1.0}) {
    const PointSet s = PointSet::rotated_lattice(20, angle);
    for (const auto& K : bodies) {
      const DistanceSet f = distance_set(s, K, DistanceMode::float_tol);
      const DistanceSet b = distance_set(s, K, DistanceMode::float_tol, brute());
      CHECK(f.used_fast_path);
      CHECK_FALSE(b.used_fast_path);
      REQUIRE(f.count() == b.count());
      for (std::size_t i = 0; i < f.count(); ++i) CHECK(f.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
      CHECK(f.multiplicities == b.multiplicities);
      CHECK(f.count() == brute_values(s, K).size());
    }
  }
}

TEST_CASE("general point sets and rational polygons") {
  const PointSet p = PointSet::perturbed_lattice(9, 3, 0.25);
  const ConvexBody hex = ConvexBody::random_symmetric_polygon(3, 7);
  const DistanceSet d = distance_set(p, hex, DistanceMode::float_tol);
  CHECK_FALSE(d.used_fast_path);
  CHECK(d.count() == brute_values(p, hex).size());
  CHECK(d.total_pairs() == p.size() * (p.size() - 1) / 2);

  const ConvexBody rp = ConvexBody::rational_polygon({{2, 0}, {1, 1}, {-2, 0}, {-1, -1}}, 2);
  const PointSet s = PointSet::lattice(6);
  const DistanceSet ex = distance_set(s, rp, DistanceMode::exact_rational);
  const DistanceSet fl = distance_set(s, rp, DistanceMode::float_tol);
  CHECK(ex.count() == fl.count());
  for (std::size_t i = 0; i < ex.count(); ++i) CHECK(ex.values[i] == doctest::Approx(fl.values[i]));

  CHECK_THROWS_AS(distance_set(PointSet::rotated_lattice(5, 0.3), ConvexBody::unit_disk(), DistanceMode::exact_rational),
                  CapabilityError);
  CHECK_THROWS_AS(distance_set(s, ConvexBody::lp_ball(2, 3.0), DistanceMode::exact_rational), CapabilityError);
  DistanceOptions tiny;
  tiny.fast_path = false;
  tiny.pair_cap = 10;
  CHECK_THROWS_AS(distance_set(s, ConvexBody::unit_disk(), DistanceMode::float_tol, tiny), CapabilityError);
  CHECK(std::isinf(distance_set(PointSet::lattice(1), ConvexBody::unit_square(), DistanceMode::float_tol).min_gap));
}

TEST_CASE("growth exponents") {
  std::vector<GrowthPoint> pts;
  for (int q : {8, 16, 32, 64, 128}) pts.push_back({q, static_cast<std::size_t>(3.0 * std::pow(q, 1.5)), 0.0});
  const GrowthReport g = growth_from_counts(pts, 2, 4.0 / 3.0);
  CHECK(g.beta == doctest::Approx(1.5).epsilon(0.01));
  CHECK(g.fit_min_q == 16);
  CHECK(g.bound == doctest::Approx(1.5));
  CHECK(g.verdict);
  CHECK_THROWS_AS(growth_from_counts({{8, 10, 0}, {16, 20, 0}}, 2), InsufficientDataError);
  CHECK_THROWS_AS(growth_from_counts({{16, 10, 0}, {16, 20, 0}, {128, 30, 0}}, 2), ArgumentError);

  PointSetFamily lat;
  const std::vector<int> qs{16, 32, 64, 128};
  const GrowthReport sq = growth_scan(lat, ConvexBody::unit_square(), qs);
  CHECK(sq.beta == doctest::Approx(1.0));
  CHECK(polygonality_probe(sq) == Polygonality::polygon_like);
  const GrowthReport disk = growth_scan(lat, ConvexBody::unit_disk(), qs);
  CHECK(disk.beta > 1.7);
  CHECK(polygonality_probe(disk) == Polygonality::curved_like);
  CHECK(to_string(Polygonality::inconclusive) == "inconclusive");
}

TEST_CASE("min gap trends") {
  PointSetFamily lat;
  const std::vector<int> qs{16, 64, 256};
  for (const auto& [q, gap] : min_gap_trend(lat, ConvexBody::unit_square(), qs)) CHECK(gap == 1.0);
  const auto e = min_gap_trend(lat, ConvexBody::unit_disk(), std::vector<int>{512});
  CHECK(e.front().second <= std::sqrt(512.0 * 512 + 1) - 512);
  PointSetFamily rot;
  rot.kind = Provenance::rotated_lattice;
  rot.angle = pi / 6;
  const auto r = min_gap_trend(rot, ConvexBody::unit_square(), std::vector<int>{16, 64, 128});
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i].second <= r[i - 1].second);
}
