#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "kdist/convex_body.hpp"
#include "kdist/geometry.hpp"

namespace kdist {

using Complex = std::complex<double>;

/// How a transform is evaluated. automatic picks the closed form when the body
/// has one (polygons, boxes, balls, ellipsoid volumes) and boundary quadrature
/// otherwise; quadrature forces the planar boundary rule.
enum class TransformMethod { automatic, quadrature };

enum class MeasureKind { surface, body };

/// Shell {x : R <= ||x||_K <= R + delta} of a planar body.
struct AnnulusSpec {
  double radius = 1.0;
  double delta = 0.1;
};

/// Fourier transform of arc length / surface measure on the boundary,
/// int_{dK} exp(-2 pi i x.xi) dsigma(x).
Complex surface_ft(const ConvexBody& body, const Frequency& xi,
                   TransformMethod method = TransformMethod::automatic, double panel_scale = 1.0);

/// Fourier transform of the indicator of K. Quadrature goes through the
/// divergence identity, reducing the area integral to the boundary.
Complex body_ft(const ConvexBody& body, const Frequency& xi,
                TransformMethod method = TransformMethod::automatic, double panel_scale = 1.0);

/// Transform of the annulus A_{R,delta}: F(R + delta) - F(R) with
/// F(s) = s^2 body_ft(s xi). Planar only; delta <= R/10 enforced.
Complex annulus_ft(const ConvexBody& body, const AnnulusSpec& annulus, const Frequency& xi,
                   TransformMethod method = TransformMethod::automatic);

/// Panels used by the boundary rule at frequency radius R: at least
/// max(64, 16 R diam) and short enough for 4 panels per oscillation.
int quadrature_panel_count(const ConvexBody& body, double radius, double panel_scale = 1.0);

/// Directions used by spherical_average: max(256, 32 R diam).
int spherical_node_count(const ConvexBody& body, double radius);

/// L^p average over directions (uniform probability measure on the circle)
/// of |sigma_hat(R omega)| or |chi_hat(R omega)|; the p-th root is taken for p = 2.
double spherical_average(const ConvexBody& body, double radius, int p, MeasureKind kind,
                         TransformMethod method = TransformMethod::automatic);

// ---------------------------------------------------------------------------
// Lemma-level checks

struct Lemma11Entry {
  double t = 0.0;
  double theta = 0.0;
  double ratio = 0.0;
};

struct Lemma11Report {
  double max_ratio = 0.0;
  std::vector<Lemma11Entry> entries;
  /// (octave lower edge 2^k, max ratio within [2^k, 2^{k+1}))
  std::vector<std::pair<double, double>> octave_max;
  int skipped = 0;
  /// max over octaves divided by the median octave value
  double octave_spread() const;
};

/// t |chi_hat(t omega)| / (l(theta, 1/(2t)) + l(theta + pi, 1/(2t))) over the grid.
Lemma11Report lemma11_check(const ConvexBody& body, std::span<const double> t_grid,
                            std::span<const double> theta_grid);

struct Lemma12Grid {
  std::vector<double> radii;
  std::vector<double> deltas;
  std::vector<double> frequencies;  ///< |xi| values
  std::vector<double> thetas;
};

/// Dyadic refinement: geometric midpoints inserted between consecutive
/// radii, deltas and frequencies.
Lemma12Grid refine(const Lemma12Grid& grid);

struct Lemma12Entry {
  double radius, delta, frequency, theta;
  double value;  ///< |annulus_ft|
  double bound;  ///< R^{1/2} |xi|^{-1/2} min(|xi|^{-1}, delta)
};

struct Lemma12Report {
  double max_C = 0.0;
  std::vector<Lemma12Entry> entries;
  /// (|xi|, max ratio at that |xi|)
  std::vector<std::pair<double, double>> frequency_max;
  bool curvature_satisfied = true;
  /// max ratio at the largest |xi| over max ratio at the smallest
  double frequency_growth = 1.0;
  /// true when the ratio is bounded along the frequency ladder
  bool bounded() const { return frequency_growth < 2.0; }
};

Lemma12Report lemma12_check(const ConvexBody& body, const Lemma12Grid& grid);

}  // namespace kdist
