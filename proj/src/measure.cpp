#include "kdist/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "kdist/error.hpp"
#include "kdist/parallel.hpp"

namespace kdist {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kMaxAtoms = 1'000'000;

struct RadialRule {
  static constexpr unsigned order = 8;
  std::array<double, order> nodes{};
  std::array<double, order> weights{};

  RadialRule() {
    using G = boost::math::quadrature::gauss<double, order>;
    std::size_t k = 0;
    for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
      const double a = G::abscissa()[i], w = G::weights()[i];
      nodes[k] = a;
      weights[k++] = w;
      if (a != 0.0) {
        nodes[k] = -a;
        weights[k++] = w;
      }
    }
  }
};

}  // namespace

AtomicMeasure AtomicMeasure::from_atoms(std::vector<std::vector<double>> points, std::vector<Rational> weights) {
  if (points.empty()) throw ArgumentError("a measure needs at least one atom");
  if (points.size() != weights.size()) throw ArgumentError("one weight per atom is required");
  AtomicMeasure mu;
  mu.dim_ = static_cast<int>(points.front().size());
  if (mu.dim_ < 1) throw ArgumentError("atoms need at least one coordinate");
  Rational total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != mu.dim_) throw ArgumentError("atoms have mixed dimensions");
    if (weights[i] <= 0) throw ArgumentError("atom weights must be positive");
    for (double v : points[i]) {
      if (!std::isfinite(v)) throw ArgumentError("atom coordinate is not finite");
      mu.coords_.push_back(v);
    }
    total += weights[i];
  }
  if (total != 1) throw ArgumentError("atom weights sum to " + to_string(total) + ", not 1");
  for (const auto& w : weights) mu.weights_d_.push_back(to_double(w));
  mu.weights_ = std::move(weights);
  return mu;
}

AtomicMeasure AtomicMeasure::point_mass(std::vector<double> x) {
  return from_atoms({std::move(x)}, {Rational(1)});
}

AtomicMeasure AtomicMeasure::product(std::vector<AtomicMeasure> factors) {
  if (factors.empty()) throw ArgumentError("product of no factors");
  AtomicMeasure mu;
  mu.dim_ = 0;
  for (const auto& f : factors) {
    if (f.factors_.size() > 0 || f.dim_ != 1) throw ArgumentError("product factors must be one-dimensional");
    mu.dim_ += f.dim_;
  }
  mu.factors_ = std::move(factors);
  return mu;
}

std::size_t AtomicMeasure::size() const {
  if (factors_.empty()) return weights_.size();
  std::size_t n = 1;
  for (const auto& f : factors_) n *= f.size();
  return n;
}

Rational AtomicMeasure::total_mass() const {
  if (!factors_.empty()) {
    Rational m = 1;
    for (const auto& f : factors_) m *= f.total_mass();
    return m;
  }
  Rational m = 0;
  for (const auto& w : weights_) m += w;
  return m;
}

std::span<const double> AtomicMeasure::point(std::size_t i) const {
  if (!factors_.empty()) throw CapabilityError("atoms of a product measure are not stored individually");
  const auto d = static_cast<std::size_t>(dim_);
  return {coords_.data() + i * d, d};
}

double AtomicMeasure::support_extent() const {
  if (!factors_.empty()) {
    double s = 0.0;
    for (const auto& f : factors_) s += f.support_extent() * f.support_extent();
    return std::sqrt(s);
  }
  const auto d = static_cast<std::size_t>(dim_);
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double lo = coords_[j], hi = coords_[j];
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      lo = std::min(lo, coords_[i * d + j]);
      hi = std::max(hi, coords_[i * d + j]);
    }
    s += (hi - lo) * (hi - lo);
  }
  return std::sqrt(s);
}

std::complex<double> AtomicMeasure::fourier(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim_) throw ArgumentError("frequency dimension differs from the measure");
  if (!factors_.empty()) {
    std::complex<double> v = 1.0;
    for (std::size_t j = 0; j < factors_.size(); ++j) v *= factors_[j].fourier(xi.subspan(j, 1));
    return v;
  }
  const auto d = static_cast<std::size_t>(dim_);
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    double arg = 0.0;
    for (std::size_t j = 0; j < d; ++j) arg += coords_[i * d + j] * xi[j];
    arg *= -kTwoPi;
    re += weights_d_[i] * std::cos(arg);
    im += weights_d_[i] * std::sin(arg);
  }
  return {re, im};
}

AtomicMeasure natural_measure(const CantorSpec& spec, int copies) {
  spec.validate();
  if (copies < 1) throw ArgumentError("copies must be >= 1");
  std::uint64_t cells = 1;
  for (int c = 0; c < copies; ++c) {
    cells *= spec.cell_count();
    if (cells > kMaxAtoms) throw RangeError("natural measure would have more than 10^6 atoms");
  }
  const auto ends = spec.left_endpoints();
  const double den = static_cast<double>(spec.denominator());
  std::vector<std::vector<double>> pts;
  pts.reserve(ends.size());
  for (auto e : ends) pts.push_back({(static_cast<double>(e) + 0.5) / den});
  const Rational w(mpz_class(1), mpz_class(static_cast<unsigned long>(ends.size())));
  AtomicMeasure factor = AtomicMeasure::from_atoms(std::move(pts), std::vector<Rational>(ends.size(), w));
  if (copies == 1) return factor;
  return AtomicMeasure::product(std::vector<AtomicMeasure>(static_cast<std::size_t>(copies), factor));
}

double energy_integral(const AtomicMeasure& mu, double gamma, double T) {
  if (mu.dim() != 2) throw CapabilityError("energy integrals use a planar polar grid");
  if (!(gamma > 0.0) || !(gamma < mu.dim())) throw ArgumentError("gamma must lie in (0, d)");
  if (!(T > 1.0)) throw ArgumentError("T must exceed 1");
  static const RadialRule rule;
  const int panels = static_cast<int>(std::ceil((T - 1.0) / 0.5));
  const double h = (T - 1.0) / panels;
  const double extent = std::max(mu.support_extent(), 1e-3);
  const std::size_t nodes = static_cast<std::size_t>(panels) * RadialRule::order;

  // |mu_hat(-xi)| = |mu_hat(xi)| for real measures: integrate a half circle
  const std::vector<double> rings = parallel_map<double>(nodes, [&](std::size_t k) {
    const std::size_t p = k / RadialRule::order, j = k % RadialRule::order;
    const double r = 1.0 + h * (static_cast<double>(p) + 0.5 * (rule.nodes[j] + 1.0));
    int n = static_cast<int>(std::ceil(1.5 * kTwoPi * r * extent)) + 16;
    n += n % 2;
    std::vector<double> vals(static_cast<std::size_t>(n / 2));
    for (int a = 0; a < n / 2; ++a) {
      const double th = kTwoPi * a / n;
      const double xi[2] = {r * std::cos(th), r * std::sin(th)};
      vals[static_cast<std::size_t>(a)] = std::norm(mu.fourier(xi));
    }
    const double ring = 2.0 * pairwise_sum(vals) * kTwoPi / n;
    return 0.5 * h * rule.weights[j] * std::pow(r, 1.0 - gamma) * ring;
  });
  return pairwise_sum(rings);
}

bool EnergyLadder::growing() const {
  for (std::size_t i = 1; i < increments.size(); ++i) {
    if (!(increments[i] > increments[i - 1])) return false;
  }
  return increments.size() >= 2;
}

bool EnergyLadder::plateauing() const {
  for (std::size_t i = 1; i < increments.size(); ++i) {
    if (!(increments[i] < increments[i - 1])) return false;
  }
  return increments.size() >= 2;
}

EnergyLadder energy_ladder(const AtomicMeasure& mu, double gamma, std::span<const double> T_values) {
  EnergyLadder out;
  double prev = 0.0;
  for (std::size_t i = 0; i < T_values.size(); ++i) {
    if (i > 0 && !(T_values[i] > T_values[i - 1])) throw ArgumentError("T ladder must be increasing");
    const double v = energy_integral(mu, gamma, T_values[i]);
    out.T.push_back(T_values[i]);
    out.integrals.push_back(v);
    if (i > 0) out.increments.push_back(v - prev);
    prev = v;
  }
  return out;
}

}  // namespace kdist
