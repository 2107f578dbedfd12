#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdist/geometry.hpp"

namespace kdist {

enum class BodyKind { polygon, ellipsoid, lp_ball, box, radial };

std::string to_string(BodyKind kind);

/// One counterclockwise edge of a planar polygon together with its face
/// functional: the body is {x : dot(normal, x) <= offset for every edge}.
/// normal is (dy, -dx), so |normal| equals the edge length.
struct PolygonEdge {
  Vec2 start;
  Vec2 end;
  Vec2 normal;
  double offset = 0.0;

  double length() const { return norm(normal); }
  Vec2 midpoint() const { return 0.5 * (start + end); }
};

/// Rational vertex data: vertex i is numerators[i] / denominator.
struct ExactPolygon {
  std::vector<std::array<std::int64_t, 2>> numerators;
  std::int64_t denominator = 1;
};

/// Piecewise-smooth counterclockwise parametrization of a planar boundary over
/// [0, 2 pi). breakpoints are the parameter values where the derivative may be
/// singular; quadrature panels never straddle them.
struct BoundaryCurve {
  std::function<Vec2(double)> point;
  std::function<Vec2(double)> tangent;
  std::vector<double> breakpoints;
  double max_speed = 0.0;
};

/// A bounded, origin-symmetric convex body with nonempty interior.
///
/// General bodies exist only in the plane (Polygon2D, Radial2D). In higher
/// dimensions the body must be an ellipsoid, an l^p ball or an axis-aligned
/// box, all of which have closed-form gauges. Validation happens in the
/// factories; a constructed body is always valid and immutable.
class ConvexBody {
 public:
  /// Counterclockwise vertex list with v[i + n/2] == -v[i].
  static ConvexBody polygon(std::vector<Vec2> vertices);
  /// Completes a half list v_0..v_{k-1} with its negatives.
  static ConvexBody symmetric_polygon(std::span<const Vec2> half);
  /// Polygon whose vertices are integer pairs over a common denominator.
  static ConvexBody rational_polygon(std::vector<std::array<std::int64_t, 2>> numerators,
                                     std::int64_t denominator);
  static ConvexBody ellipsoid(std::vector<double> semi_axes);
  static ConvexBody euclidean_ball(int dim, double radius = 1.0);
  /// p in [1, inf]; pass std::numeric_limits<double>::infinity() for the cube.
  static ConvexBody lp_ball(int dim, double p);
  static ConvexBody box(std::vector<double> half_widths);
  /// Radii sampled at theta_k = 2 pi k / N; boundary is piecewise linear in
  /// the boundary points r_k omega_k.
  static ConvexBody radial(std::vector<double> radii);
  /// Random origin-symmetric convex 2k-gon (deterministic in seed).
  static ConvexBody random_symmetric_polygon(int half_vertex_count, std::uint64_t seed);

  static ConvexBody unit_disk() { return euclidean_ball(2); }
  static ConvexBody unit_square() { return lp_ball(2, std::numeric_limits<double>::infinity()); }

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::string describe() const;

  double lp_exponent() const { return p_; }
  /// Semi-axes (ellipsoid) or half-widths (box); empty otherwise.
  std::span<const double> axes() const { return axes_; }
  /// Ellipsoid with all semi-axes equal.
  bool is_euclidean_ball() const;

  double gauge(std::span<const double> x) const;
  double gauge(Vec2 x) const;
  double support(const Direction& omega) const;
  /// A boundary point where the support value is attained.
  std::vector<double> support_point(const Direction& omega) const;
  double width(const Direction& omega) const;

  double inradius() const { return inradius_; }
  double circumradius() const { return circumradius_; }
  double diameter() const { return 2.0 * circumradius_; }
  double volume() const;
  /// Perimeter in the plane; surface area of closed-form families otherwise.
  double surface_area() const;

  /// Planar polygon view (Polygon2D, Radial2D, 2D boxes, 2D l^1 and l^inf
  /// balls); nullptr otherwise.
  const std::vector<PolygonEdge>* polygon_edges() const;
  const std::vector<Vec2>* polygon_vertices() const;
  /// Rational vertices when known exactly; nullptr otherwise.
  const ExactPolygon* exact_polygon() const;
  /// Smooth planar boundaries (ellipses, l^p balls with 1 < p < inf).
  std::optional<BoundaryCurve> boundary_curve() const;

 private:
  ConvexBody() = default;
  void finish_polygon(std::vector<Vec2> vertices);
  void compute_radii();

  BodyKind kind_ = BodyKind::polygon;
  int dim_ = 2;
  double p_ = 2.0;
  std::vector<double> axes_;
  std::shared_ptr<const std::vector<Vec2>> vertices_;
  std::shared_ptr<const std::vector<PolygonEdge>> edges_;
  std::shared_ptr<const ExactPolygon> exact_;
  double inradius_ = 0.0;
  double circumradius_ = 0.0;
};

/// Chord of K on the line x . omega = S_theta - eps.
struct ChordQuery {
  Direction omega;
  double eps = 0.0;
};

/// Length of the chord at depth eps below the support line. Exact edge
/// clipping for polygons, endpoint bisection (1e-12 in the line parameter)
/// otherwise. Throws RangeError unless 0 < eps < width(omega).
double chord_length(const ConvexBody& body, const ChordQuery& query);

/// Bisection route for any planar body; exposed so polygon results can be
/// cross-checked against it.
double chord_length_bisection(const ConvexBody& body, const ChordQuery& query);

struct CurvatureReport {
  double c_sup = 0.0;        ///< max of l(theta, eps) / sqrt(eps) over the grid
  bool satisfied = true;     ///< false when some direction shows a flat-side signature
  double worst_theta = 0.0;  ///< direction attaining c_sup
  std::optional<double> flat_theta;
  int n_directions = 0;
  int skipped = 0;  ///< (theta, eps) pairs with eps >= width(theta)
  /// A run of this many consecutive eps steps with growing ratio...
  static constexpr int flat_run = 5;
  /// ...whose total growth reaches this factor marks a flat side.
  static constexpr double flat_growth = 2.0;
};

/// Empirical check of l(theta, eps) <= c sqrt(eps) over a uniform angular grid.
CurvatureReport curvature_condition(const ConvexBody& body, std::span<const double> eps_grid,
                                    int n_directions = 360);

}  // namespace kdist
