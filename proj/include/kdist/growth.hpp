#pragma once

#include <span>
#include <string>
#include <vector>

#include "kdist/convex_body.hpp"
#include "kdist/distance_set.hpp"
#include "kdist/point_set.hpp"

namespace kdist {

struct GrowthPoint {
  int q = 0;
  std::size_t count = 0;
  double min_gap = 0.0;
};

/// Distinct-distance counts along a nested family and the fitted growth
/// exponent beta in #Delta_K(S_q) ~ q^beta.
struct GrowthReport {
  std::vector<GrowthPoint> points;
  int dim = 2;
  double beta = 0.0;
  double intercept = 0.0;  ///< log c of the fit
  double residual = 0.0;
  int fit_min_q = 0;  ///< only q >= fit_min_q (the largest three octaves) enter the fit
  double alpha = 0.0;  ///< caller-supplied alpha_K; 0 when no bound is tested
  double bound = 0.0;  ///< d / alpha_K
  double slack = 0.0;
  bool verdict = true;  ///< beta >= bound - slack
};

/// Fits beta on the counts with q >= q_max / 8. The q values must span at
/// least three octaves (InsufficientDataError otherwise).
GrowthReport growth_from_counts(std::vector<GrowthPoint> points, int dim, double alpha = 0.0, double slack = 0.05);

GrowthReport growth_scan(const PointSetFamily& family, const ConvexBody& body, std::span<const int> q_list,
                         double alpha = 0.0, double slack = 0.05, DistanceMode mode = DistanceMode::float_tol,
                         const DistanceOptions& options = {});

/// (q, min_gap) of the distance sets along the family.
std::vector<std::pair<int, double>> min_gap_trend(const PointSetFamily& family, const ConvexBody& body,
                                                  std::span<const int> q_list,
                                                  DistanceMode mode = DistanceMode::float_tol,
                                                  const DistanceOptions& options = {});

enum class Polygonality { polygon_like, curved_like, inconclusive };

std::string to_string(Polygonality p);

/// Planar dichotomy read off the growth exponent: polygon_like below 1.25,
/// curved_like above 1.4.
Polygonality polygonality_probe(const GrowthReport& report);

}  // namespace kdist
