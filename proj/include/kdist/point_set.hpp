#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kdist {

enum class Provenance { lattice, rotated_lattice, perturbed_lattice, explicit_points };

std::string to_string(Provenance p);

/// Integer index set stored as rows: for each y, the contiguous x-range
/// [x_lo, x_hi]. The lattice and its rotations are row-convex.
struct IndexRow {
  std::int64_t y = 0;
  std::int64_t x_lo = 0;
  std::int64_t x_hi = 0;
};

/// Finite point set in R^d. Duplicates are removed at construction.
///
/// Lattice-derived sets remember their integer indices m with point = L m
/// (L the identity or a rotation), which is what the translation fast path of
/// distance counting works on.
class PointSet {
 public:
  /// Integer grid Z^d intersected with [0, q]^d: (q + 1)^d points.
  static PointSet lattice(int q, int dim = 2);
  /// rho(angle) Z^2 intersected with [0, q]^2.
  static PointSet rotated_lattice(int q, double angle);
  /// Lattice points moved by a uniform jitter in [-jitter, jitter]^d. The
  /// jitter of each point depends only on (seed, index), so S_q is nested in q.
  static PointSet perturbed_lattice(int q, std::uint64_t seed, double jitter, int dim = 2);
  static PointSet from_points(const std::vector<std::vector<double>>& points);
  /// Rational points numerators / denominator.
  static PointSet from_rational(const std::vector<std::vector<std::int64_t>>& numerators,
                                std::int64_t denominator);

  int dim() const { return dim_; }
  std::size_t size() const { return n_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& flat() const { return coords_; }

  Provenance provenance() const { return provenance_; }
  int q() const { return q_; }
  double angle() const { return angle_; }
  /// rotation as (cos, sin), computed once in extended precision
  double cos_angle() const { return cos_; }
  double sin_angle() const { return sin_; }
  std::uint64_t seed() const { return seed_; }
  double jitter() const { return jitter_; }

  /// Row description of the index set (lattice and rotated lattice, d = 2).
  const std::vector<IndexRow>* index_rows() const { return rows_.empty() ? nullptr : &rows_; }

  /// Exact coordinates: numerators (row-major, dim per point) over a common
  /// denominator, when the set is rational.
  const std::vector<std::int64_t>* rational_numerators() const {
    return numerators_ ? &*numerators_ : nullptr;
  }
  std::int64_t rational_denominator() const { return denominator_; }

  /// Every coordinate multiplied by t (rational structure kept for t = num/den).
  PointSet scaled(std::int64_t num, std::int64_t den = 1) const;
  /// Rotated copy about the origin (loses lattice/rational structure).
  PointSet rotated(double angle) const;

  std::vector<double> bbox_min() const;
  std::vector<double> bbox_max() const;

 private:
  PointSet() = default;
  void dedupe();

  int dim_ = 2;
  std::size_t n_ = 0;
  std::vector<double> coords_;
  Provenance provenance_ = Provenance::explicit_points;
  int q_ = 0;
  double angle_ = 0.0;
  double cos_ = 1.0;
  double sin_ = 0.0;
  std::uint64_t seed_ = 0;
  double jitter_ = 0.0;
  std::vector<IndexRow> rows_;
  std::optional<std::vector<std::int64_t>> numerators_;
  std::int64_t denominator_ = 1;
};

/// (kind, angle, seed, jitter) generator of the nested family S_q.
struct PointSetFamily {
  Provenance kind = Provenance::lattice;
  int dim = 2;
  double angle = 0.0;
  std::uint64_t seed = 0;
  double jitter = 0.0;

  PointSet generate(int q) const;
  std::string describe() const;
};

// ---------------------------------------------------------------------------

struct WellDistributedResult {
  bool ok = true;
  /// lower corner of an empty cube when !ok
  std::optional<std::vector<double>> witness;
  double side = 0.0;
  std::size_t cubes_checked = 0;
};

/// Every closed cube of side C with corners on the (C/2)-grid of the bounding
/// box shrunk by C on every side contains a point.
WellDistributedResult well_distributed_check(const PointSet& s, double C);

struct SeparatedResult {
  bool ok = true;
  double min_distance = 0.0;  ///< +inf for fewer than two points
};

/// min Euclidean pair distance >= c (relative slack 1e-12 for rounding).
SeparatedResult separated_check(const PointSet& s, double c);

}  // namespace kdist
