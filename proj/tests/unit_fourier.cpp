#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "kdist/convex_body.hpp"
#include "kdist/decay_fit.hpp"
#include "kdist/error.hpp"
#include "kdist/fourier.hpp"

using namespace kdist;
using std::numbers::pi;

namespace {

// Composite Simpson rule with n (even) panels.
template <class F>
auto simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  auto s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * (h / 3.0);
}

// Bessel J_n(x) from its integral representation; the trapezoid rule over a
// full period converges geometrically here.
double bessel_j(int n, double x) {
  const int m = 2048;
  double s = 0.0;
  for (int k = 0; k < m; ++k) {
    const double t = 2 * pi * (k + 0.5) / m;
    s += std::cos(n * t - x * std::sin(t));
  }
  return s / m;
}

// Surface transform of a polygon by Simpson quadrature along every edge.
Complex polygon_surface_oracle(const std::vector<Vec2>& v, Vec2 xi) {
  Complex total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    const double len = norm(b - a);
    total += len * simpson(
                       [&](double u) {
                         const Vec2 x = a + u * (b - a);
                         return std::exp(Complex(0.0, -2 * pi * dot(x, xi)));
                       },
                       0.0, 1.0, 4000);
  }
  return total;
}

}  // namespace

TEST_CASE("bessel oracle sanity") {
  CHECK(bessel_j(0, 0.0) == doctest::Approx(1.0));
  CHECK(bessel_j(0, 2.404825557695773) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bessel_j(1, 3.831705970207512) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("disk transforms match Bessel closed forms") {
  const ConvexBody disk = ConvexBody::unit_disk();
  for (double r : {0.3, 2.0, 17.5, 150.0}) {
    const Frequency xi = Frequency::polar(r, 0.7);
    const double x = 2 * pi * r;
    CHECK(std::abs(surface_ft(disk, xi) - 2 * pi * bessel_j(0, x)) < 1e-10);
    CHECK(std::abs(body_ft(disk, xi) - bessel_j(1, x) / r) < 1e-10);
    CHECK(std::abs(surface_ft(disk, xi, TransformMethod::quadrature) - 2 * pi * bessel_j(0, x)) < 1e-8);
    CHECK(std::abs(body_ft(disk, xi, TransformMethod::quadrature) - bessel_j(1, x) / r) < 1e-8);
  }
  CHECK(std::abs(body_ft(disk, Frequency::polar(0.0, 0.0)) - pi) < 1e-12);
}

TEST_CASE("square transform factorizes into sinc functions") {
  const ConvexBody sq = ConvexBody::unit_square();
  auto sinc = [](double u) { return u == 0.0 ? 2.0 : std::sin(2 * pi * u) / (pi * u); };
  for (const Vec2 x : {Vec2{0.37, 1.9}, Vec2{12.25, 0.0}, Vec2{-40.1, 33.3}}) {
    const Frequency xi(std::vector<double>{x.x, x.y});
    CHECK(std::abs(body_ft(sq, xi) - sinc(x.x) * sinc(x.y)) < 1e-12);
    CHECK(std::abs(body_ft(sq, xi, TransformMethod::quadrature) - sinc(x.x) * sinc(x.y)) < 1e-8);
  }
  const ConvexBody box = ConvexBody::box({1.0, 0.5, 2.0});
  const Frequency xi3(std::vector<double>{0.3, 1.1, -0.7});
  auto sinc_h = [](double h, double u) { return std::sin(2 * pi * h * u) / (pi * u); };
  CHECK(std::abs(body_ft(box, xi3) - sinc_h(1.0, 0.3) * sinc_h(0.5, 1.1) * sinc_h(2.0, -0.7)) < 1e-12);
}

TEST_CASE("polygon surface transform against edge quadrature") {
  const std::vector<Vec2> v{{1.0, 0.0}, {0.4, 0.9}, {-0.5, 0.6}, {-1.0, 0.0}, {-0.4, -0.9}, {0.5, -0.6}};
  const ConvexBody hex = ConvexBody::polygon(v);
  for (const Vec2 x : {Vec2{0.2, 0.1}, Vec2{3.3, -1.7}, Vec2{0.0, 9.0}}) {
    const Frequency xi(std::vector<double>{x.x, x.y});
    const Complex want = polygon_surface_oracle(v, x);
    CHECK(std::abs(surface_ft(hex, xi) - want) < 1e-9);
    CHECK(std::abs(surface_ft(hex, xi, TransformMethod::quadrature) - want) < 1e-8);
  }
  CHECK(std::abs(surface_ft(hex, Frequency::polar(0.0, 0.0)) - hex.surface_area()) < 1e-12);
}

TEST_CASE("ellipse and radial bodies: closed form against boundary rule") {
  const ConvexBody ell = ConvexBody::ellipsoid({2.0, 1.0});
  for (double r : {0.5, 6.0, 40.0}) {
    const Frequency xi = Frequency::polar(r, 1.2);
    CHECK(std::abs(body_ft(ell, xi) - body_ft(ell, xi, TransformMethod::quadrature)) < 1e-8);
  }
  // chi_hat(xi) = det A * chi_hat_B(A xi)
  const Frequency xi = Frequency::polar(3.0, 0.4);
  const double ax = 2.0 * xi.planar().x, ay = xi.planar().y, ra = std::hypot(ax, ay);
  CHECK(std::abs(body_ft(ell, xi) - 2.0 * bessel_j(1, 2 * pi * ra) / ra) < 1e-10);
}

TEST_CASE("annulus transform against polar integration") {
  const ConvexBody disk = ConvexBody::unit_disk();
  for (double xr : {0.7, 5.0, 30.0}) {
    const AnnulusSpec a{4.0, 0.2};
    const Frequency xi = Frequency::polar(xr, 2.0);
    const double want = simpson([&](double r) { return 2 * pi * r * bessel_j(0, 2 * pi * r * xr); }, a.radius,
                                a.radius + a.delta, 400);
    CHECK(std::abs(annulus_ft(disk, a, xi) - want) < 1e-9);
  }
  CHECK_THROWS_AS(annulus_ft(disk, {1.0, 0.5}, Frequency::polar(1.0, 0.0)), ArgumentError);
}

TEST_CASE("spherical averages") {
  const ConvexBody disk = ConvexBody::unit_disk();
  // |sigma_hat| of the disk is radial, so every L^p average equals the value
  for (double r : {3.0, 20.0}) {
    const double v = std::abs(2 * pi * bessel_j(0, 2 * pi * r));
    CHECK(spherical_average(disk, r, 1, MeasureKind::surface) == doctest::Approx(v).epsilon(1e-9));
    CHECK(spherical_average(disk, r, 2, MeasureKind::surface) == doctest::Approx(v).epsilon(1e-9));
  }
  // L^2 average of the square by an independent angular Simpson rule
  const ConvexBody sq = ConvexBody::unit_square();
  auto sinc = [](double u) { return std::abs(u) < 1e-300 ? 2.0 : std::sin(2 * pi * u) / (pi * u); };
  const double R = 7.3;
  const double mean_sq = simpson(
                             [&](double t) {
                               const double f = sinc(R * std::cos(t)) * sinc(R * std::sin(t));
                               return f * f;
                             },
                             0.0, 2 * pi, 20000) /
                         (2 * pi);
  CHECK(spherical_average(sq, R, 2, MeasureKind::body) == doctest::Approx(std::sqrt(mean_sq)).epsilon(1e-8));
  CHECK_THROWS_AS(spherical_average(sq, R, 3, MeasureKind::body), ArgumentError);
}

TEST_CASE("log-log fits") {
  std::vector<DecaySample> s;
  for (double r : log_grid(8, 512, 20)) s.push_back({r, 3.0 * std::pow(r, -0.75)});
  const DecayProfile p = decay_fit(s);
  CHECK(p.gamma == doctest::Approx(0.75));
  CHECK(p.C == doctest::Approx(3.0));
  CHECK(p.residual < 1e-12);

  std::vector<DecaySample> l;
  for (double r : log_grid(8, 512, 20)) l.push_back({r, 2.0 * std::log(r) / r});
  const DecayProfile pl = decay_fit(l, true, 2);
  CHECK(pl.gamma == doctest::Approx(1.0));
  CHECK(pl.log_power == 1.0);
  CHECK(pl.C == doctest::Approx(2.0));

  s.push_back({600.0, 0.0});
  CHECK(decay_fit(s).dropped == 1);
  std::vector<DecaySample> few(s.begin(), s.begin() + 5);
  CHECK_THROWS_AS(decay_fit(few), InsufficientDataError);
  std::vector<DecaySample> narrow;
  for (double r : log_grid(8, 20, 12)) narrow.push_back({r, 1 / r});
  CHECK_THROWS_AS(decay_fit(narrow), InsufficientDataError);

  const auto g = log_grid(1, 1000, 4);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 1000.0);
  CHECK(g[1] == doctest::Approx(10.0));
}

TEST_CASE("envelope maxima recover the amplitude of an oscillation") {
  auto f = [](double r) { return std::abs(std::cos(2 * pi * r + 0.3)) * std::pow(r, -0.5); };
  EnvelopeOptions o;
  o.period = 0.5;
  o.probes_per_period = 4;
  o.refine_peaks = 1000;
  const auto env = envelope_maxima(f, 8, 512, o);
  CHECK(env.size() == 12);
  for (std::size_t k = 0; k < env.size(); ++k) {
    const double lo = 8 * std::pow(2.0, 0.5 * k), hi = 8 * std::pow(2.0, 0.5 * (k + 1));
    double brute = 0.0;
    for (double r = lo; r <= hi; r += 1e-4) brute = std::max(brute, f(r));
    CHECK(env[k].radius >= lo);
    CHECK(env[k].radius <= hi);
    CHECK(env[k].value == doctest::Approx(brute).epsilon(1e-6));
  }
  CHECK(decay_fit(env).gamma == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("chord ratio and annulus checks on small grids") {
  const ConvexBody disk = ConvexBody::unit_disk();
  const std::vector<double> ts = log_grid(4, 64, 17), th{0.05, 1.0, 2.5};
  const Lemma11Report r = lemma11_check(disk, ts, th);
  CHECK(r.entries.size() == ts.size() * th.size());
  CHECK(r.max_ratio > 0.0);
  CHECK(r.octave_max.size() == 5);  // t = 64 opens its own octave
  CHECK(r.octave_spread() < 2.0);

  Lemma12Grid g{{4, 8}, {0.1, 0.2}, {8, 16, 32}, {0.0, 0.5}};
  const Lemma12Report a = lemma12_check(disk, g);
  CHECK(a.entries.size() == 2 * 2 * 3 * 2);
  CHECK(a.curvature_satisfied);
  for (const auto& e : a.entries) CHECK(e.bound == doctest::Approx(std::sqrt(e.radius / e.frequency) *
                                                                     std::min(1 / e.frequency, e.delta)));
  const Lemma12Grid fine = refine(g);
  CHECK(fine.radii.size() == 3);
  CHECK(fine.frequencies.size() == 5);
  CHECK(fine.radii[1] == doctest::Approx(std::sqrt(32.0)));
  CHECK_FALSE(lemma12_check(ConvexBody::unit_square(), g).curvature_satisfied);
}
