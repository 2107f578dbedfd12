#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace kdist {

struct DecaySample {
  double radius = 0.0;
  double value = 0.0;
};

/// Power-law fit value ~ C (log R)^k R^{-gamma} of a sampled decay.
struct DecayProfile {
  std::vector<DecaySample> samples;  ///< positive samples, strictly increasing in R
  double gamma = 0.0;
  double C = 0.0;
  double residual = 0.0;  ///< RMS of the log-log regression
  double log_power = 0.0;  ///< k; 0 unless the log correction was enabled
  bool log_correction = false;
  int dropped = 0;  ///< non-positive samples removed before fitting
};

/// Least squares in log-log coordinates. With log_correction the power k of
/// log R is fixed to dim - 1. Needs >= 8 positive samples spread over >= 3
/// octaves (InsufficientDataError otherwise).
DecayProfile decay_fit(std::span<const DecaySample> samples, bool log_correction = false, int dim = 2);

/// Ordinary least squares y = a + b x; returns {a, b, rms residual}.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual = 0.0;
};
LineFit least_squares(std::span<const double> x, std::span<const double> y);

struct EnvelopeOptions {
  int bins_per_octave = 2;
  int coarse_samples = 48;    ///< minimum log-uniform probes per bin
  double period = 0.25;       ///< shortest oscillation period in R (about 1/diameter)
  /// When positive, every bin gets at least this many probes per period.
  double probes_per_period = 0.0;
  /// Number of highest local probe maxima refined per bin.
  int refine_peaks = 1;
};

/// Per-bin maxima of f over [r_min, r_max]: probes each bin on a log-uniform
/// grid, then refines the best local probe maxima by a dense scan and
/// golden-section search. Returns one (R at the maximum, max value) per bin.
std::vector<DecaySample> envelope_maxima(const std::function<double(double)>& f, double r_min, double r_max,
                                         const EnvelopeOptions& options = {});

/// n log-spaced radii from r_min to r_max inclusive.
std::vector<double> log_grid(double r_min, double r_max, int n);

}  // namespace kdist
