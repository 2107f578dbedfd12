#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kdist/decay_fit.hpp"

namespace kdist {

struct PlotData {
  std::vector<DecaySample> samples;
  /// fitted power law drawn over the sample range
  std::optional<DecayProfile> fit;
  std::string title;
  std::string x_label = "R";
  std::string y_label = "value";
};

/// Deterministic 800x600 log-log SVG: one circle per positive sample, the fit
/// as a polyline and a caption with gamma, C and the residual. Non-positive
/// samples are dropped and counted in the caption. Throws ArgumentError for
/// fewer than two samples and InsufficientDataError when nothing survives.
std::string emit_plot(const PlotData& data);

}  // namespace kdist
