#include "kdist/geometry.hpp"

#include "kdist/error.hpp"

namespace kdist {

Direction Direction::planar(double theta) {
  Direction d;
  const double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  d.theta_ = t;
  d.unit_ = {std::cos(theta), std::sin(theta)};
  return d;
}

Direction Direction::from_vector(std::vector<double> v) {
  if (v.empty()) throw ArgumentError("Direction: empty vector");
  const double n = euclidean_norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw ArgumentError("Direction: zero or non-finite vector");
  for (double& c : v) c /= n;
  Direction d;
  if (v.size() == 2) {
    double t = std::atan2(v[1], v[0]);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    d.theta_ = t;
  }
  d.unit_ = std::move(v);
  return d;
}

Direction Direction::opposite() const {
  Direction d = *this;
  for (double& c : d.unit_) c = -c;
  if (unit_.size() == 2) {
    d.theta_ = std::fmod(theta_ + std::numbers::pi, 2.0 * std::numbers::pi);
  }
  return d;
}

Frequency::Frequency(std::vector<double> xi) : xi_(std::move(xi)) {
  if (xi_.empty()) throw ArgumentError("Frequency: empty vector");
  radius_ = euclidean_norm(xi_);
  if (radius_ > 0.0) {
    omega_ = Direction::from_vector(xi_);
  } else {
    std::vector<double> e(xi_.size(), 0.0);
    e[0] = 1.0;
    omega_ = Direction::from_vector(std::move(e));
  }
}

Frequency Frequency::polar(double radius, double theta) {
  return along(Direction::planar(theta), radius);
}

Frequency Frequency::along(const Direction& omega, double radius) {
  std::vector<double> xi(omega.unit().begin(), omega.unit().end());
  for (double& c : xi) c *= radius;
  Frequency f(std::move(xi));
  if (radius > 0.0) {
    f.omega_ = omega;  // keep the caller's angle exactly
    f.radius_ = radius;
  }
  return f;
}

Frequency Frequency::scaled(double s) const {
  std::vector<double> xi = xi_;
  for (double& c : xi) c *= s;
  return Frequency(std::move(xi));
}

}  // namespace kdist
