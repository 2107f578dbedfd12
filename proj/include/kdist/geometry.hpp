#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace kdist {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
/// Counterclockwise quarter turn.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline double euclidean_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

/// Unit vector in R^d. In the plane it also carries the angle theta with
/// omega = (cos theta, sin theta).
class Direction {
 public:
  static Direction planar(double theta);
  /// Normalizes v; throws ArgumentError on the zero vector.
  static Direction from_vector(std::vector<double> v);

  int dim() const { return static_cast<int>(unit_.size()); }
  std::span<const double> unit() const { return unit_; }
  double operator[](int i) const { return unit_[static_cast<std::size_t>(i)]; }
  /// Planar angle in [0, 2 pi); only meaningful when dim() == 2.
  double angle() const { return theta_; }
  Vec2 planar_unit() const { return {unit_[0], unit_[1]}; }
  Direction opposite() const;

 private:
  std::vector<double> unit_;
  double theta_ = 0.0;
};

/// Frequency xi = R * omega.
class Frequency {
 public:
  explicit Frequency(std::vector<double> xi);
  static Frequency polar(double radius, double theta);
  static Frequency along(const Direction& omega, double radius);

  int dim() const { return static_cast<int>(xi_.size()); }
  std::span<const double> xi() const { return xi_; }
  double radius() const { return radius_; }
  /// Undefined direction for xi = 0 is reported as the first axis.
  const Direction& direction() const { return omega_; }
  Vec2 planar() const { return {xi_[0], xi_[1]}; }
  Frequency scaled(double s) const;
  Frequency negated() const { return scaled(-1.0); }

 private:
  std::vector<double> xi_;
  double radius_ = 0.0;
  Direction omega_;
};

}  // namespace kdist
