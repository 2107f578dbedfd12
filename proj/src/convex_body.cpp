#include "kdist/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "kdist/error.hpp"
#include "kdist/random.hpp"

namespace kdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

double lp_norm(std::span<const double> x, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

void require_dim(int dim) {
  if (dim < 2) throw ArgumentError("convex body dimension must be >= 2");
}

}  // namespace

std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::polygon: return "polygon";
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::lp_ball: return "lp_ball";
    case BodyKind::box: return "box";
    case BodyKind::radial: return "radial";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// factories

void ConvexBody::finish_polygon(std::vector<Vec2> v) {
  const std::size_t n = v.size();
  if (n < 4 || n % 2 != 0) {
    throw ArgumentError("polygon needs an even number (>= 4) of vertices, got " + std::to_string(n));
  }
  double scale = 0.0;
  for (const Vec2& p : v) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ArgumentError("polygon vertex is not finite");
    scale = std::max(scale, norm(p));
  }
  if (!(scale > 0.0)) throw ArgumentError("polygon is degenerate");
  const double tol = 1e-12 * scale;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const Vec2 s = v[i] + v[i + n / 2];
    if (norm(s) > tol) {
      throw ArgumentError("polygon is not origin-symmetric: vertex " + std::to_string(i + n / 2) +
                          " != -vertex " + std::to_string(i));
    }
  }
  double twice_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice_area += cross(v[i], v[(i + 1) % n]);
  if (!(twice_area > 0.0)) throw ArgumentError("polygon vertices must be counterclockwise");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = v[(i + 1) % n] - v[i];
    const Vec2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
    if (norm(e1) <= tol) throw ArgumentError("polygon has a repeated vertex at index " + std::to_string(i));
    if (cross(e1, e2) < -tol * scale) {
      throw ArgumentError("polygon is not convex at vertex " + std::to_string((i + 1) % n));
    }
  }
  auto edges = std::make_shared<std::vector<PolygonEdge>>();
  edges->reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PolygonEdge e;
    e.start = v[i];
    e.end = v[(i + 1) % n];
    e.normal = {e.end.y - e.start.y, -(e.end.x - e.start.x)};
    e.offset = dot(e.normal, e.start);
    if (!(e.offset > tol * norm(e.normal))) {
      throw ArgumentError("polygon does not contain the origin in its interior");
    }
    edges->push_back(e);
  }
  dim_ = 2;
  vertices_ = std::make_shared<const std::vector<Vec2>>(std::move(v));
  edges_ = std::move(edges);
}

ConvexBody ConvexBody::polygon(std::vector<Vec2> vertices) {
  ConvexBody b;
  b.kind_ = BodyKind::polygon;
  b.finish_polygon(std::move(vertices));
  b.compute_radii();
  return b;
}

ConvexBody ConvexBody::symmetric_polygon(std::span<const Vec2> half) {
  std::vector<Vec2> v(half.begin(), half.end());
  for (const Vec2& p : half) v.push_back(-p);
  return polygon(std::move(v));
}

ConvexBody ConvexBody::rational_polygon(std::vector<std::array<std::int64_t, 2>> numerators,
                                        std::int64_t denominator) {
  if (denominator <= 0) throw ArgumentError("rational polygon denominator must be positive");
  constexpr std::int64_t kLimit = std::int64_t{1} << 30;
  std::vector<Vec2> v;
  v.reserve(numerators.size());
  for (const auto& p : numerators) {
    if (std::abs(p[0]) > kLimit || std::abs(p[1]) > kLimit) {
      throw ArgumentError("rational polygon numerators must stay below 2^30 in magnitude");
    }
    v.push_back({static_cast<double>(p[0]) / static_cast<double>(denominator),
                 static_cast<double>(p[1]) / static_cast<double>(denominator)});
  }
  const std::size_t n = numerators.size();
  for (std::size_t i = 0; n % 2 == 0 && i < n / 2; ++i) {
    if (numerators[i][0] != -numerators[i + n / 2][0] || numerators[i][1] != -numerators[i + n / 2][1]) {
      throw ArgumentError("rational polygon is not exactly origin-symmetric at vertex " + std::to_string(i));
    }
  }
  ConvexBody b = polygon(std::move(v));
  b.exact_ = std::make_shared<const ExactPolygon>(ExactPolygon{std::move(numerators), denominator});
  return b;
}

ConvexBody ConvexBody::ellipsoid(std::vector<double> semi_axes) {
  require_dim(static_cast<int>(semi_axes.size()));
  for (double a : semi_axes) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ArgumentError("ellipsoid semi-axes must be positive and finite");
  }
  ConvexBody b;
  b.kind_ = BodyKind::ellipsoid;
  b.dim_ = static_cast<int>(semi_axes.size());
  b.axes_ = std::move(semi_axes);
  b.compute_radii();
  return b;
}

ConvexBody ConvexBody::euclidean_ball(int dim, double radius) {
  require_dim(dim);
  return ellipsoid(std::vector<double>(static_cast<std::size_t>(dim), radius));
}

ConvexBody ConvexBody::lp_ball(int dim, double p) {
  require_dim(dim);
  if (!(p >= 1.0)) throw ArgumentError("l^p ball exponent must be in [1, inf]");
  ConvexBody b;
  b.kind_ = BodyKind::lp_ball;
  b.dim_ = dim;
  b.p_ = p;
  if (dim == 2 && std::isinf(p)) {
    b.finish_polygon({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
    b.exact_ = std::make_shared<const ExactPolygon>(
        ExactPolygon{{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}, 1});
  } else if (dim == 2 && p == 1.0) {
    b.finish_polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    b.exact_ = std::make_shared<const ExactPolygon>(ExactPolygon{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, 1});
  }
  b.compute_radii();
  return b;
}

ConvexBody ConvexBody::box(std::vector<double> half_widths) {
  require_dim(static_cast<int>(half_widths.size()));
  for (double h : half_widths) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ArgumentError("box half-widths must be positive and finite");
  }
  ConvexBody b;
  b.kind_ = BodyKind::box;
  b.dim_ = static_cast<int>(half_widths.size());
  b.axes_ = std::move(half_widths);
  if (b.dim_ == 2) {
    const double hx = b.axes_[0], hy = b.axes_[1];
    b.finish_polygon({{hx, -hy}, {hx, hy}, {-hx, hy}, {-hx, -hy}});
    if (hx == std::floor(hx) && hy == std::floor(hy) && hx < 1e9 && hy < 1e9) {
      const auto ix = static_cast<std::int64_t>(hx), iy = static_cast<std::int64_t>(hy);
      b.exact_ = std::make_shared<const ExactPolygon>(
          ExactPolygon{{{ix, -iy}, {ix, iy}, {-ix, iy}, {-ix, -iy}}, 1});
    }
  }
  b.compute_radii();
  return b;
}

ConvexBody ConvexBody::radial(std::vector<double> radii) {
  const std::size_t n = radii.size();
  if (n < 4 || n % 2 != 0) throw ArgumentError("radial body needs an even number (>= 4) of samples");
  double rmax = 0.0;
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ArgumentError("radial samples must be strictly positive");
    rmax = std::max(rmax, r);
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    if (std::abs(radii[k] - radii[k + n / 2]) > 1e-12 * rmax) {
      throw ArgumentError("radial samples are not symmetric: r[" + std::to_string(k) + "] != r[" +
                          std::to_string(k + n / 2) + "]");
    }
  }
  std::vector<Vec2> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    v[k] = {radii[k] * std::cos(t), radii[k] * std::sin(t)};
  }
  // exact antipodes so the symmetry check sees the sampled symmetry, not trig rounding
  for (std::size_t k = 0; k < n / 2; ++k) v[k + n / 2] = -v[k];
  ConvexBody b;
  b.kind_ = BodyKind::radial;
  b.axes_ = std::move(radii);
  b.finish_polygon(std::move(v));
  b.compute_radii();
  return b;
}

ConvexBody ConvexBody::random_symmetric_polygon(int half_vertex_count, std::uint64_t seed) {
  if (half_vertex_count < 2) throw ArgumentError("random polygon needs at least 2 half vertices");
  SeededRng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> angles(static_cast<std::size_t>(half_vertex_count));
    for (double& a : angles) a = rng.uniform(0.0, std::numbers::pi);
    std::sort(angles.begin(), angles.end());
    std::vector<Vec2> half;
    for (double a : angles) {
      const double r = rng.uniform(0.5, 1.5);
      half.push_back({r * std::cos(a), r * std::sin(a)});
    }
    try {
      return symmetric_polygon(half);
    } catch (const ArgumentError&) {
      // not convex (or origin on an edge); draw again
    }
  }
  throw ArgumentError("could not draw a convex symmetric polygon");
}

void ConvexBody::compute_radii() {
  if (edges_) {
    double rin = kInf, rout = 0.0;
    for (const auto& e : *edges_) rin = std::min(rin, e.offset / e.length());
    for (const auto& v : *vertices_) rout = std::max(rout, norm(v));
    inradius_ = rin;
    circumradius_ = rout;
    return;
  }
  const double d = dim_;
  switch (kind_) {
    case BodyKind::ellipsoid:
    case BodyKind::box: {
      inradius_ = *std::min_element(axes_.begin(), axes_.end());
      if (kind_ == BodyKind::ellipsoid) {
        circumradius_ = *std::max_element(axes_.begin(), axes_.end());
      } else {
        circumradius_ = euclidean_norm(axes_);
      }
      break;
    }
    case BodyKind::lp_ball: {
      const double inv_p = std::isinf(p_) ? 0.0 : 1.0 / p_;
      if (p_ >= 2.0) {
        inradius_ = 1.0;
        circumradius_ = std::pow(d, 0.5 - inv_p);
      } else {
        inradius_ = std::pow(d, 0.5 - inv_p);
        circumradius_ = 1.0;
      }
      break;
    }
    default:
      break;
  }
  if (!(inradius_ > 0.0)) throw ArgumentError("degenerate convex body (zero inradius)");
}

// ---------------------------------------------------------------------------
// queries

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(d=" << dim_;
  switch (kind_) {
    case BodyKind::lp_ball: os << ", p=" << (std::isinf(p_) ? std::string("inf") : std::to_string(p_)); break;
    case BodyKind::ellipsoid:
    case BodyKind::box:
      os << ", axes=";
      for (std::size_t i = 0; i < axes_.size(); ++i) os << (i ? " " : "") << axes_[i];
      break;
    case BodyKind::polygon:
    case BodyKind::radial: os << ", vertices=" << vertices_->size(); break;
  }
  os << ")";
  return os.str();
}

bool ConvexBody::is_euclidean_ball() const {
  if (kind_ == BodyKind::lp_ball) return p_ == 2.0;
  if (kind_ != BodyKind::ellipsoid) return false;
  return std::all_of(axes_.begin(), axes_.end(), [&](double a) { return a == axes_[0]; });
}

double ConvexBody::gauge(Vec2 x) const {
  if (edges_ && !(kind_ == BodyKind::lp_ball || kind_ == BodyKind::box)) {
    double g = 0.0;
    for (const auto& e : *edges_) g = std::max(g, dot(e.normal, x) / e.offset);
    return g;
  }
  const double xs[2] = {x.x, x.y};
  return gauge(std::span<const double>(xs, 2));
}

double ConvexBody::gauge(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw ArgumentError("gauge: point dimension mismatch");
  switch (kind_) {
    case BodyKind::polygon:
    case BodyKind::radial: {
      double g = 0.0;
      const Vec2 p{x[0], x[1]};
      for (const auto& e : *edges_) g = std::max(g, dot(e.normal, p) / e.offset);
      return g;
    }
    case BodyKind::ellipsoid: {
      double m = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] / axes_[i]));
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = x[i] / axes_[i] / m;
        s += t * t;
      }
      return m * std::sqrt(s);
    }
    case BodyKind::lp_ball: return lp_norm(x, p_);
    case BodyKind::box: {
      double g = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) g = std::max(g, std::abs(x[i]) / axes_[i]);
      return g;
    }
  }
  return 0.0;
}

double ConvexBody::support(const Direction& omega) const {
  if (omega.dim() != dim_) throw ArgumentError("support: direction dimension mismatch");
  const auto w = omega.unit();
  switch (kind_) {
    case BodyKind::polygon:
    case BodyKind::radial: {
      double s = -kInf;
      const Vec2 u = omega.planar_unit();
      for (const auto& v : *vertices_) s = std::max(s, dot(v, u));
      return s;
    }
    case BodyKind::ellipsoid: {
      std::vector<double> aw(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) aw[i] = axes_[i] * w[i];
      return euclidean_norm(aw);
    }
    case BodyKind::lp_ball: return lp_norm(w, conjugate_exponent(p_));
    case BodyKind::box: {
      double s = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) s += axes_[i] * std::abs(w[i]);
      return s;
    }
  }
  return 0.0;
}

std::vector<double> ConvexBody::support_point(const Direction& omega) const {
  if (omega.dim() != dim_) throw ArgumentError("support_point: direction dimension mismatch");
  const auto w = omega.unit();
  std::vector<double> x(w.size(), 0.0);
  switch (kind_) {
    case BodyKind::polygon:
    case BodyKind::radial: {
      const Vec2 u = omega.planar_unit();
      const Vec2* best = &vertices_->front();
      for (const auto& v : *vertices_) {
        if (dot(v, u) > dot(*best, u)) best = &v;
      }
      return {best->x, best->y};
    }
    case BodyKind::ellipsoid: {
      const double s = support(omega);
      for (std::size_t i = 0; i < w.size(); ++i) x[i] = axes_[i] * axes_[i] * w[i] / s;
      return x;
    }
    case BodyKind::lp_ball: {
      if (std::isinf(p_)) {
        for (std::size_t i = 0; i < w.size(); ++i) x[i] = sgn(w[i]);
      } else if (p_ == 1.0) {
        std::size_t j = 0;
        for (std::size_t i = 1; i < w.size(); ++i) {
          if (std::abs(w[i]) > std::abs(w[j])) j = i;
        }
        x[j] = sgn(w[j]);
      } else {
        const double q = conjugate_exponent(p_);
        const double nq = lp_norm(w, q);
        for (std::size_t i = 0; i < w.size(); ++i) {
          x[i] = sgn(w[i]) * std::pow(std::abs(w[i]) / nq, q - 1.0);
        }
      }
      return x;
    }
    case BodyKind::box: {
      for (std::size_t i = 0; i < w.size(); ++i) x[i] = axes_[i] * sgn(w[i]);
      return x;
    }
  }
  return x;
}

double ConvexBody::width(const Direction& omega) const {
  return support(omega) + support(omega.opposite());
}

double ConvexBody::volume() const {
  const double d = dim_;
  if (edges_) {
    double twice = 0.0;
    for (const auto& e : *edges_) twice += cross(e.start, e.end);
    return 0.5 * twice;
  }
  switch (kind_) {
    case BodyKind::ellipsoid: {
      double prod = 1.0;
      for (double a : axes_) prod *= a;
      return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0) * prod;
    }
    case BodyKind::lp_ball:
      if (std::isinf(p_)) return std::pow(2.0, d);
      return std::pow(2.0 * std::tgamma(1.0 + 1.0 / p_), d) / std::tgamma(1.0 + d / p_);
    case BodyKind::box: {
      double prod = 1.0;
      for (double h : axes_) prod *= 2.0 * h;
      return prod;
    }
    default: return 0.0;
  }
}

double ConvexBody::surface_area() const {
  const double d = dim_;
  if (edges_) {
    double per = 0.0;
    for (const auto& e : *edges_) per += e.length();
    return per;
  }
  if (kind_ == BodyKind::lp_ball && std::isinf(p_)) return box(std::vector<double>(static_cast<std::size_t>(dim_), 1.0)).surface_area();
  if (kind_ == BodyKind::box) {
    double total = 0.0;
    for (std::size_t j = 0; j < axes_.size(); ++j) {
      double face = 2.0;
      for (std::size_t k = 0; k < axes_.size(); ++k) {
        if (k != j) face *= 2.0 * axes_[k];
      }
      total += face;
    }
    return total;
  }
  if (is_euclidean_ball()) {
    const double r = kind_ == BodyKind::lp_ball ? 1.0 : axes_[0];
    return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0) * std::pow(r, d - 1.0);
  }
  if (dim_ == 2 && kind_ == BodyKind::ellipsoid) {
    const double a = std::max(axes_[0], axes_[1]);
    const double b = std::min(axes_[0], axes_[1]);
    const double k = std::sqrt(1.0 - (b / a) * (b / a));
    return 4.0 * a * boost::math::ellint_2(k);
  }
  if (auto curve = boundary_curve()) {
    // arc length by Gauss-Legendre panels between breakpoints
    double total = 0.0;
    auto bp = curve->breakpoints;
    bp.push_back(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      const int panels = 256;
      const double h = (bp[i + 1] - bp[i]) / panels;
      for (int j = 0; j < panels; ++j) {
        const double lo = bp[i] + j * h;
        total += boost::math::quadrature::gauss<double, 20>::integrate(
            [&](double t) { return norm(curve->tangent(t)); }, lo, lo + h);
      }
    }
    return total;
  }
  throw CapabilityError("surface area not available for " + describe());
}

const std::vector<PolygonEdge>* ConvexBody::polygon_edges() const { return edges_.get(); }
const std::vector<Vec2>* ConvexBody::polygon_vertices() const { return vertices_.get(); }
const ExactPolygon* ConvexBody::exact_polygon() const { return exact_.get(); }

std::optional<BoundaryCurve> ConvexBody::boundary_curve() const {
  if (dim_ != 2 || edges_) return std::nullopt;
  const double two_pi = 2.0 * std::numbers::pi;
  if (kind_ == BodyKind::ellipsoid) {
    const double a = axes_[0], b = axes_[1];
    BoundaryCurve c;
    c.point = [a, b](double t) { return Vec2{a * std::cos(t), b * std::sin(t)}; };
    c.tangent = [a, b](double t) { return Vec2{-a * std::sin(t), b * std::cos(t)}; };
    c.breakpoints = {0.0};
    c.max_speed = std::max(a, b);
    return c;
  }
  if (kind_ == BodyKind::lp_ball) {
    const double p = p_;
    // polar form r(t) = 1 / ||(cos t, sin t)||_p
    auto norm_p = [p](double t) {
      const double c = std::abs(std::cos(t)), s = std::abs(std::sin(t));
      return std::pow(std::pow(c, p) + std::pow(s, p), 1.0 / p);
    };
    BoundaryCurve c;
    c.point = [norm_p](double t) {
      const double r = 1.0 / norm_p(t);
      return Vec2{r * std::cos(t), r * std::sin(t)};
    };
    c.tangent = [p, norm_p](double t) {
      const double ct = std::cos(t), st = std::sin(t);
      const double n = norm_p(t);
      // d/dt ||w||_p = ||w||_p^{1-p} * (|c|^{p-1} sgn(c) (-s) + |s|^{p-1} sgn(s) c)
      const double dn = std::pow(n, 1.0 - p) *
                        (std::pow(std::abs(ct), p - 1.0) * sgn(ct) * (-st) +
                         std::pow(std::abs(st), p - 1.0) * sgn(st) * ct);
      const double r = 1.0 / n;
      const double dr = -dn / (n * n);
      return Vec2{dr * ct - r * st, dr * st + r * ct};
    };
    c.breakpoints = {0.0, two_pi / 4, two_pi / 2, 3 * two_pi / 4};
    double speed = 0.0;
    for (int i = 0; i < 4096; ++i) speed = std::max(speed, norm(c.tangent((i + 0.5) * two_pi / 4096)));
    c.max_speed = speed;
    return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// chords

namespace {

void check_chord_query(const ConvexBody& body, const ChordQuery& q) {
  if (body.dim() != 2 || q.omega.dim() != 2) throw CapabilityError("chords are defined for planar bodies only");
  const double w = body.width(q.omega);
  if (!(q.eps > 0.0) || !(q.eps < w)) {
    throw RangeError("chord depth eps=" + std::to_string(q.eps) + " outside (0, width=" + std::to_string(w) + ")");
  }
}

}  // namespace

double chord_length_bisection(const ConvexBody& body, const ChordQuery& q) {
  check_chord_query(body, q);
  const Vec2 u = q.omega.planar_unit();
  const Vec2 v = perp(u);
  const auto sp = body.support_point(q.omega);
  const Vec2 top{sp[0], sp[1]};
  const double s = dot(top, u);
  // (1 - eps/S) * top lies in K (convex combination of top and the origin)
  const Vec2 center = (1.0 - q.eps / s) * top;
  const double reach = 3.0 * body.circumradius();
  auto crossing = [&](double sign) {
    double lo = 0.0, hi = reach;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (body.gauge(center + (sign * mid) * v) <= 1.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  return crossing(1.0) + crossing(-1.0);
}

double chord_length(const ConvexBody& body, const ChordQuery& q) {
  const auto* edges = body.polygon_edges();
  if (!edges) return chord_length_bisection(body, q);
  check_chord_query(body, q);
  const Vec2 u = q.omega.planar_unit();
  const Vec2 v = perp(u);
  const double level = body.support(q.omega) - q.eps;
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -tmin;
  for (const auto& e : *edges) {
    const double fa = dot(e.start, u) - level;
    const double fb = dot(e.end, u) - level;
    if (fa == 0.0) {
      const double t = dot(e.start, v);
      tmin = std::min(tmin, t);
      tmax = std::max(tmax, t);
    }
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      const double lambda = fa / (fa - fb);
      const Vec2 p = e.start + lambda * (e.end - e.start);
      const double t = dot(p, v);
      tmin = std::min(tmin, t);
      tmax = std::max(tmax, t);
    }
  }
  if (!(tmax >= tmin)) return 0.0;
  return tmax - tmin;
}

CurvatureReport curvature_condition(const ConvexBody& body, std::span<const double> eps_grid,
                                    int n_directions) {
  if (eps_grid.empty()) throw ArgumentError("curvature_condition: empty eps grid");
  if (n_directions < 1) throw ArgumentError("curvature_condition: need at least one direction");
  if (body.dim() != 2) throw CapabilityError("curvature condition is a planar check");
  std::vector<double> eps(eps_grid.begin(), eps_grid.end());
  for (double e : eps) {
    if (!(e > 0.0)) throw RangeError("curvature_condition: eps values must be positive");
  }
  std::sort(eps.begin(), eps.end(), std::greater<>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

  CurvatureReport rep;
  rep.n_directions = n_directions;
  for (int k = 0; k < n_directions; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n_directions;
    const Direction omega = Direction::planar(theta);
    const double w = body.width(omega);
    std::vector<double> ratios;
    for (double e : eps) {
      if (e >= w) {
        ++rep.skipped;
        continue;
      }
      const double r = chord_length(body, {omega, e}) / std::sqrt(e);
      ratios.push_back(r);
      if (r > rep.c_sup) {
        rep.c_sup = r;
        rep.worst_theta = theta;
      }
    }
    // flat side: the ratio keeps growing over a full run of steps and at least doubles
    const int run = CurvatureReport::flat_run;
    for (std::size_t i = 0; !rep.flat_theta && i + run < ratios.size(); ++i) {
      bool growing = true;
      for (int j = 0; j < run && growing; ++j) growing = ratios[i + j + 1] >= ratios[i + j];
      if (growing && ratios[i + run] >= CurvatureReport::flat_growth * ratios[i]) rep.flat_theta = theta;
    }
  }
  rep.satisfied = !rep.flat_theta.has_value();
  return rep;
}

}  // namespace kdist
