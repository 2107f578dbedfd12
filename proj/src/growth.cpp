#include "kdist/growth.hpp"

#include <algorithm>
#include <cmath>

#include "kdist/decay_fit.hpp"
#include "kdist/error.hpp"

namespace kdist {

namespace {

void check_sorted(std::span<const int> q_list) {
  if (q_list.empty()) throw InsufficientDataError("empty q list");
  for (std::size_t i = 0; i < q_list.size(); ++i) {
    if (q_list[i] < 1) throw ArgumentError("q values must be >= 1");
    if (i > 0 && q_list[i] <= q_list[i - 1]) throw ArgumentError("q values must be strictly increasing");
  }
}

void check_q_list(std::span<const int> q_list) {
  check_sorted(q_list);
  if (static_cast<double>(q_list.back()) < 8.0 * static_cast<double>(q_list.front())) {
    throw InsufficientDataError("q list must span at least three octaves");
  }
}

}  // namespace

GrowthReport growth_from_counts(std::vector<GrowthPoint> points, int dim, double alpha, double slack) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.q < b.q; });
  std::vector<int> qs;
  for (const auto& p : points) qs.push_back(p.q);
  check_q_list(qs);

  GrowthReport rep;
  rep.points = std::move(points);
  rep.dim = dim;
  rep.fit_min_q = static_cast<int>(std::ceil(rep.points.back().q / 8.0));
  std::vector<double> x, y;
  for (const auto& p : rep.points) {
    if (p.q < rep.fit_min_q || p.count == 0) continue;
    x.push_back(std::log(static_cast<double>(p.q)));
    y.push_back(std::log(static_cast<double>(p.count)));
  }
  if (x.size() < 2) throw InsufficientDataError("fewer than two positive counts in the fitted octaves");
  const LineFit fit = least_squares(x, y);
  rep.beta = fit.slope;
  rep.intercept = fit.intercept;
  rep.residual = fit.residual;
  rep.alpha = alpha;
  rep.slack = slack;
  if (alpha > 0.0) {
    rep.bound = dim / alpha;
    rep.verdict = rep.beta >= rep.bound - slack;
  }
  return rep;
}

GrowthReport growth_scan(const PointSetFamily& family, const ConvexBody& body, std::span<const int> q_list,
                         double alpha, double slack, DistanceMode mode, const DistanceOptions& options) {
  check_q_list(q_list);
  std::vector<GrowthPoint> pts;
  for (int q : q_list) {
    const DistanceSet ds = distance_set(family.generate(q), body, mode, options);
    pts.push_back({q, ds.count(), ds.min_gap});
  }
  return growth_from_counts(std::move(pts), family.dim, alpha, slack);
}

std::vector<std::pair<int, double>> min_gap_trend(const PointSetFamily& family, const ConvexBody& body,
                                                  std::span<const int> q_list, DistanceMode mode,
                                                  const DistanceOptions& options) {
  check_sorted(q_list);
  std::vector<std::pair<int, double>> out;
  for (int q : q_list) out.emplace_back(q, distance_set(family.generate(q), body, mode, options).min_gap);
  return out;
}

std::string to_string(Polygonality p) {
  switch (p) {
    case Polygonality::polygon_like: return "polygon_like";
    case Polygonality::curved_like: return "curved_like";
    case Polygonality::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Polygonality polygonality_probe(const GrowthReport& report) {
  if (report.dim != 2) throw CapabilityError("the polygonality probe is planar");
  if (report.beta < 1.25) return Polygonality::polygon_like;
  if (report.beta > 1.4) return Polygonality::curved_like;
  return Polygonality::inconclusive;
}

}  // namespace kdist
