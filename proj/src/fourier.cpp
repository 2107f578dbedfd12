#include "kdist/fourier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "kdist/error.hpp"
#include "kdist/parallel.hpp"

namespace kdist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// sin(x)/x with the removable singularity filled in
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

Complex phase(double arg) { return std::polar(1.0, -kTwoPi * arg); }

// Full Gauss-Legendre rule on [-1, 1] expanded from boost's half table.
struct GaussRule {
  static constexpr unsigned order = 10;
  std::array<double, order> nodes{};
  std::array<double, order> weights{};

  GaussRule() {
    using G = boost::math::quadrature::gauss<double, order>;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      nodes[k] = a[i];
      weights[k++] = w[i];
      if (a[i] != 0.0) {
        nodes[k] = -a[i];
        weights[k++] = w[i];
      }
    }
  }
};

const GaussRule& gauss_rule() {
  static const GaussRule rule;
  return rule;
}

// ---- closed forms ---------------------------------------------------------

Complex polygon_surface(const std::vector<PolygonEdge>& edges, Vec2 xi) {
  std::vector<Complex> terms;
  terms.reserve(edges.size());
  for (const auto& e : edges) {
    const double u = dot(e.end - e.start, xi);
    terms.push_back(e.length() * phase(dot(e.midpoint(), xi)) * sinc(kPi * u));
  }
  return pairwise_sum(terms);
}

Complex polygon_body(const ConvexBody& body, const std::vector<PolygonEdge>& edges, Vec2 xi) {
  const double r2 = dot(xi, xi);
  if (r2 == 0.0) return body.volume();
  std::vector<Complex> terms;
  terms.reserve(edges.size());
  for (const auto& e : edges) {
    const double u = dot(e.end - e.start, xi);
    terms.push_back(dot(xi, e.normal) * phase(dot(e.midpoint(), xi)) * sinc(kPi * u));
  }
  return kI / (kTwoPi * r2) * pairwise_sum(terms);
}

// sin(2 pi h x) / (pi x), the 1D transform of [-h, h]
double interval_ft(double h, double x) { return 2.0 * h * sinc(kTwoPi * h * x); }

Complex box_body(std::span<const double> half, std::span<const double> xi) {
  double prod = 1.0;
  for (std::size_t j = 0; j < half.size(); ++j) prod *= interval_ft(half[j], xi[j]);
  return prod;
}

Complex box_surface(std::span<const double> half, std::span<const double> xi) {
  double total = 0.0;
  for (std::size_t j = 0; j < half.size(); ++j) {
    double face = 2.0 * std::cos(kTwoPi * half[j] * xi[j]);
    for (std::size_t k = 0; k < half.size(); ++k) {
      if (k != j) face *= interval_ft(half[k], xi[k]);
    }
    total += face;
  }
  return total;
}

// unit ball: |xi|^{-d/2} J_{d/2}(2 pi |xi|)
double ball_body(int d, double r) {
  const double nu = d / 2.0;
  if (r == 0.0) return std::pow(kPi, nu) / std::tgamma(nu + 1.0);
  return std::pow(r, -nu) * std::cyl_bessel_j(nu, kTwoPi * r);
}

// unit sphere: 2 pi |xi|^{1-d/2} J_{d/2-1}(2 pi |xi|)
double sphere_surface(int d, double r) {
  const double nu = d / 2.0 - 1.0;
  if (r == 0.0) return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0);
  return kTwoPi * std::pow(r, -nu) * std::cyl_bessel_j(nu, kTwoPi * r);
}

std::vector<double> box_half_widths(const ConvexBody& body) {
  if (body.kind() == BodyKind::box) return {body.axes().begin(), body.axes().end()};
  return std::vector<double>(static_cast<std::size_t>(body.dim()), 1.0);
}

bool is_box_like(const ConvexBody& body) {
  return body.kind() == BodyKind::box || (body.kind() == BodyKind::lp_ball && std::isinf(body.lp_exponent()));
}

double ball_radius(const ConvexBody& body) {
  return body.kind() == BodyKind::lp_ball ? 1.0 : body.axes()[0];
}

void require_dim(const ConvexBody& body, const Frequency& xi) {
  if (xi.dim() != body.dim()) throw ArgumentError("frequency dimension does not match the body");
}

// ---- boundary quadrature -------------------------------------------------

// Integrates weight(x, x') * exp(-2 pi i x.xi) over the boundary.
template <typename Weight>
Complex boundary_integral(const ConvexBody& body, Vec2 xi, double panel_scale, Weight weight) {
  const auto& rule = gauss_rule();
  const double radius = norm(xi);
  const int total = quadrature_panel_count(body, radius, panel_scale);
  std::vector<Complex> panels;

  if (const auto* edges = body.polygon_edges()) {
    const double perimeter = body.surface_area();
    for (const auto& e : *edges) {
      const double len = e.length();
      const int n = std::max(
          {1, static_cast<int>(std::ceil(total * len / perimeter)),
           static_cast<int>(std::ceil(4.0 * radius * len * panel_scale))});
      const Vec2 d = e.end - e.start;
      for (int j = 0; j < n; ++j) {
        const double lo = static_cast<double>(j) / n, hi = static_cast<double>(j + 1) / n;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        Complex acc = 0.0;
        for (std::size_t k = 0; k < GaussRule::order; ++k) {
          const double t = mid + half * rule.nodes[k];
          const Vec2 x = e.start + t * d;
          acc += rule.weights[k] * weight(x, d) * phase(dot(x, xi));
        }
        panels.push_back(half * acc);
      }
    }
    return pairwise_sum(panels);
  }

  const auto curve = body.boundary_curve();
  if (!curve) throw CapabilityError("no boundary rule for " + body.describe());
  auto bp = curve->breakpoints;
  bp.push_back(kTwoPi);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double span = bp[i + 1] - bp[i];
    const int n = std::max(1, static_cast<int>(std::ceil(total * span / kTwoPi)));
    for (int j = 0; j < n; ++j) {
      const double lo = bp[i] + span * j / n, hi = bp[i] + span * (j + 1) / n;
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      Complex acc = 0.0;
      for (std::size_t k = 0; k < GaussRule::order; ++k) {
        const double t = mid + half * rule.nodes[k];
        const Vec2 x = curve->point(t);
        acc += rule.weights[k] * weight(x, curve->tangent(t)) * phase(dot(x, xi));
      }
      panels.push_back(half * acc);
    }
  }
  return pairwise_sum(panels);
}

Complex surface_quadrature(const ConvexBody& body, const Frequency& xi, double panel_scale) {
  if (body.dim() != 2) throw CapabilityError("boundary quadrature is planar; no rule for " + body.describe());
  return boundary_integral(body, xi.planar(), panel_scale, [](Vec2, Vec2 dx) { return norm(dx); });
}

Complex body_quadrature(const ConvexBody& body, const Frequency& xi, double panel_scale) {
  if (body.dim() != 2) throw CapabilityError("boundary quadrature is planar; no rule for " + body.describe());
  const Vec2 w = xi.planar();
  const double r2 = dot(w, w);
  if (r2 == 0.0) return body.volume();
  // div(xi e(x) / (-2 pi i |xi|^2)) = e(x); outward normal ds = (y', -x') dt
  const Complex s = boundary_integral(body, w, panel_scale, [w](Vec2, Vec2 dx) { return w.x * dx.y - w.y * dx.x; });
  return kI / (kTwoPi * r2) * s;
}

}  // namespace

int quadrature_panel_count(const ConvexBody& body, double radius, double panel_scale) {
  double n = std::max(64.0, 16.0 * radius * body.diameter());
  if (const auto curve = body.boundary_curve()) {
    // panels no longer than 1 / (4 |xi| max speed) in the parameter
    n = std::max(n, 4.0 * radius * curve->max_speed * kTwoPi);
  }
  return static_cast<int>(std::ceil(n * panel_scale));
}

int spherical_node_count(const ConvexBody& body, double radius) {
  return static_cast<int>(std::ceil(std::max(256.0, 32.0 * radius * body.diameter())));
}

Complex surface_ft(const ConvexBody& body, const Frequency& xi, TransformMethod method, double panel_scale) {
  require_dim(body, xi);
  if (method == TransformMethod::quadrature) return surface_quadrature(body, xi, panel_scale);
  if (const auto* edges = body.polygon_edges()) return polygon_surface(*edges, xi.planar());
  if (is_box_like(body)) return box_surface(box_half_widths(body), xi.xi());
  if (body.is_euclidean_ball()) {
    const double r = ball_radius(body);
    return std::pow(r, body.dim() - 1) * sphere_surface(body.dim(), r * xi.radius());
  }
  if (body.dim() == 2 && body.boundary_curve()) return surface_quadrature(body, xi, panel_scale);
  throw CapabilityError("surface transform not available for " + body.describe());
}

Complex body_ft(const ConvexBody& body, const Frequency& xi, TransformMethod method, double panel_scale) {
  require_dim(body, xi);
  if (method == TransformMethod::quadrature) return body_quadrature(body, xi, panel_scale);
  if (const auto* edges = body.polygon_edges()) return polygon_body(body, *edges, xi.planar());
  if (is_box_like(body)) return box_body(box_half_widths(body), xi.xi());
  if (body.kind() == BodyKind::ellipsoid || body.is_euclidean_ball()) {
    // linear image of the unit ball: chi_hat_E(xi) = det(A) chi_hat_B(A xi)
    double det = 1.0, r2 = 0.0;
    for (int j = 0; j < body.dim(); ++j) {
      const double a = body.kind() == BodyKind::ellipsoid ? body.axes()[static_cast<std::size_t>(j)] : 1.0;
      det *= a;
      const double c = a * xi.xi()[static_cast<std::size_t>(j)];
      r2 += c * c;
    }
    return det * ball_body(body.dim(), std::sqrt(r2));
  }
  if (body.dim() == 2 && body.boundary_curve()) return body_quadrature(body, xi, panel_scale);
  throw CapabilityError("body transform not available for " + body.describe());
}

Complex annulus_ft(const ConvexBody& body, const AnnulusSpec& a, const Frequency& xi, TransformMethod method) {
  if (body.dim() != 2) throw CapabilityError("annulus transform is planar only");
  if (!(a.radius > 0.0) || !(a.delta > 0.0)) throw ArgumentError("annulus needs R > 0 and delta > 0");
  if (a.delta > a.radius / 10.0) throw ArgumentError("annulus width must satisfy delta <= R/10");
  const auto F = [&](double s) { return s * s * body_ft(body, xi.scaled(s), method); };
  return F(a.radius + a.delta) - F(a.radius);
}

double spherical_average(const ConvexBody& body, double radius, int p, MeasureKind kind, TransformMethod method) {
  if (p != 1 && p != 2) throw ArgumentError("spherical_average: p must be 1 or 2");
  if (!(radius > 0.0)) throw ArgumentError("spherical_average: R must be positive");
  if (body.dim() != 2) throw CapabilityError("spherical averages are implemented in the plane");
  const int n = spherical_node_count(body, radius);
  const auto values = parallel_map<double>(static_cast<std::size_t>(n), [&](std::size_t k) {
    const Frequency xi = Frequency::polar(radius, kTwoPi * static_cast<double>(k) / n);
    const double v = std::abs(kind == MeasureKind::surface ? surface_ft(body, xi, method) : body_ft(body, xi, method));
    return p == 1 ? v : v * v;
  });
  const double mean = pairwise_sum(values) / n;
  return p == 1 ? mean : std::sqrt(mean);
}

// ---------------------------------------------------------------------------

double Lemma11Report::octave_spread() const {
  if (octave_max.empty()) return 0.0;
  std::vector<double> v;
  for (const auto& [lo, m] : octave_max) v.push_back(m);
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return v.back() / median;
}

Lemma11Report lemma11_check(const ConvexBody& body, std::span<const double> t_grid,
                            std::span<const double> theta_grid) {
  if (body.dim() != 2) throw CapabilityError("lemma11_check is planar");
  if (t_grid.empty() || theta_grid.empty()) throw ArgumentError("lemma11_check: empty grid");
  Lemma11Report rep;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw ArgumentError("lemma11_check: t must be positive");
    for (double theta : theta_grid) {
      const Direction omega = Direction::planar(theta);
      const double eps = 1.0 / (2.0 * t);
      double chords = 0.0;
      try {
        chords = chord_length(body, {omega, eps}) + chord_length(body, {omega.opposite(), eps});
      } catch (const RangeError&) {
        ++rep.skipped;
        continue;
      }
      const double ratio = t * std::abs(body_ft(body, Frequency::along(omega, t))) / chords;
      rep.entries.push_back({t, theta, ratio});
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      const double lo = std::exp2(std::floor(std::log2(t)));
      auto it = std::find_if(rep.octave_max.begin(), rep.octave_max.end(), [&](const auto& o) { return o.first == lo; });
      if (it == rep.octave_max.end()) {
        rep.octave_max.emplace_back(lo, ratio);
      } else {
        it->second = std::max(it->second, ratio);
      }
    }
  }
  std::sort(rep.octave_max.begin(), rep.octave_max.end());
  return rep;
}

Lemma12Grid refine(const Lemma12Grid& g) {
  auto densify = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(v[i]);
      if (i + 1 < v.size()) out.push_back(std::sqrt(v[i] * v[i + 1]));
    }
    return out;
  };
  return {densify(g.radii), densify(g.deltas), densify(g.frequencies), g.thetas};
}

Lemma12Report lemma12_check(const ConvexBody& body, const Lemma12Grid& grid) {
  if (grid.radii.empty() || grid.deltas.empty() || grid.frequencies.empty() || grid.thetas.empty()) {
    throw ArgumentError("lemma12_check: empty grid");
  }
  Lemma12Report rep;
  std::vector<double> eps;
  for (int k = 1; k <= 20; ++k) eps.push_back(std::exp2(-k));
  const double wmin = 2.0 * body.inradius();
  std::erase_if(eps, [&](double e) { return e >= wmin; });
  rep.curvature_satisfied = curvature_condition(body, eps).satisfied;

  std::vector<double> freqs = grid.frequencies;
  std::sort(freqs.begin(), freqs.end());
  for (double f : freqs) {
    double fmax = 0.0;
    for (double r : grid.radii) {
      for (double d : grid.deltas) {
        for (double theta : grid.thetas) {
          const double value = std::abs(annulus_ft(body, {r, d}, Frequency::polar(f, theta)));
          const double bound = std::sqrt(r) / std::sqrt(f) * std::min(1.0 / f, d);
          rep.entries.push_back({r, d, f, theta, value, bound});
          const double ratio = value / bound;
          fmax = std::max(fmax, ratio);
          rep.max_C = std::max(rep.max_C, ratio);
        }
      }
    }
    rep.frequency_max.emplace_back(f, fmax);
  }
  const double first = rep.frequency_max.front().second;
  const double last = rep.frequency_max.back().second;
  rep.frequency_growth = first > 0.0 ? last / first : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace kdist
