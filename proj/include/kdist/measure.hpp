#pragma once

#include <complex>
#include <span>
#include <vector>

#include "kdist/cantor.hpp"
#include "kdist/rational.hpp"

namespace kdist {

/// Finite atomic probability measure with exact rational weights.
///
/// A product measure keeps its one-dimensional factors, so its Fourier
/// transform is evaluated as a product of short exponential sums.
class AtomicMeasure {
 public:
  /// Weights must be positive and sum to exactly 1.
  static AtomicMeasure from_atoms(std::vector<std::vector<double>> points, std::vector<Rational> weights);
  static AtomicMeasure point_mass(std::vector<double> x);
  /// Product of one-dimensional factors.
  static AtomicMeasure product(std::vector<AtomicMeasure> factors);

  int dim() const { return dim_; }
  /// Number of atoms (for products, the product of the factor sizes).
  std::size_t size() const;
  Rational total_mass() const;
  /// Atoms of a non-product measure.
  std::span<const double> point(std::size_t i) const;
  const Rational& weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<AtomicMeasure>* factors() const { return factors_.empty() ? nullptr : &factors_; }

  /// Diagonal of the bounding box of the atoms (an upper bound on the diameter).
  double support_extent() const;

  /// mu_hat(xi) = sum_a w_a exp(-2 pi i a.xi)
  std::complex<double> fourier(std::span<const double> xi) const;

 private:
  AtomicMeasure() = default;

  int dim_ = 1;
  std::vector<double> coords_;
  std::vector<Rational> weights_;
  std::vector<double> weights_d_;
  std::vector<AtomicMeasure> factors_;
};

/// Uniform weights on the depth-n cell centres of C_{2m}, or of its
/// `copies`-fold product. At most 10^6 cells.
AtomicMeasure natural_measure(const CantorSpec& spec, int copies = 1);

/// Integral of |xi|^{-gamma} |mu_hat(xi)|^2 over 1 <= |xi| <= T in the plane.
/// Needs gamma in (0, 2) and T > 1.
double energy_integral(const AtomicMeasure& mu, double gamma, double T);

struct EnergyLadder {
  std::vector<double> T;
  std::vector<double> integrals;
  /// I(T_k) - I(T_{k-1}) for k >= 1
  std::vector<double> increments;

  /// increments keep growing along the ladder
  bool growing() const;
  /// increments shrink along the ladder
  bool plateauing() const;
};

EnergyLadder energy_ladder(const AtomicMeasure& mu, double gamma, std::span<const double> T_values);

}  // namespace kdist
