#include "kdist/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kdist/error.hpp"

namespace kdist {

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw InsufficientDataError("least squares needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("least squares needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

DecayProfile decay_fit(std::span<const DecaySample> samples, bool log_correction, int dim) {
  DecayProfile prof;
  prof.log_correction = log_correction;
  prof.log_power = log_correction ? dim - 1 : 0;
  for (const auto& s : samples) {
    if (s.value > 0.0 && s.radius > 0.0 && std::isfinite(s.value)) {
      prof.samples.push_back(s);
    } else {
      ++prof.dropped;
    }
  }
  std::sort(prof.samples.begin(), prof.samples.end(), [](auto& a, auto& b) { return a.radius < b.radius; });
  for (std::size_t i = 1; i < prof.samples.size(); ++i) {
    if (!(prof.samples[i].radius > prof.samples[i - 1].radius)) {
      throw ArgumentError("decay_fit: sample radii must be distinct");
    }
  }
  if (prof.samples.size() < 8) {
    throw InsufficientDataError("decay_fit needs at least 8 positive samples, got " +
                                std::to_string(prof.samples.size()) + " (" + std::to_string(prof.dropped) +
                                " dropped)");
  }
  const double octaves = std::log2(prof.samples.back().radius / prof.samples.front().radius);
  if (octaves < 3.0 - 1e-9) throw InsufficientDataError("decay_fit needs samples spread over at least 3 octaves");
  if (log_correction && prof.samples.front().radius <= 1.0) {
    throw ArgumentError("decay_fit: log correction needs R > 1");
  }
  std::vector<double> x, y;
  for (const auto& s : prof.samples) {
    x.push_back(std::log(s.radius));
    double v = std::log(s.value);
    if (log_correction) v -= prof.log_power * std::log(std::log(s.radius));
    y.push_back(v);
  }
  const LineFit fit = least_squares(x, y);
  prof.gamma = -fit.slope;
  prof.C = std::exp(fit.intercept);
  prof.residual = fit.residual;
  return prof;
}

std::vector<double> log_grid(double r_min, double r_max, int n) {
  if (n < 2 || !(r_min > 0.0) || !(r_max > r_min)) throw ArgumentError("log_grid: bad range");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = std::log(r_max / r_min) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = r_min * std::exp(step * i);
  out.back() = r_max;
  return out;
}

std::vector<DecaySample> envelope_maxima(const std::function<double(double)>& f, double r_min, double r_max,
                                         const EnvelopeOptions& opt) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw ArgumentError("envelope_maxima: bad range");
  if (opt.bins_per_octave < 1 || opt.coarse_samples < 2 || opt.refine_peaks < 1 || opt.probes_per_period < 0.0 || !(opt.period > 0.0)) {
    throw ArgumentError("envelope_maxima: bad options");
  }
  const double ratio = std::exp2(1.0 / opt.bins_per_octave);
  const int bins = static_cast<int>(std::floor(std::log(r_max / r_min) / std::log(ratio) + 1e-9));
  std::vector<DecaySample> out;
  for (int b = 0; b < bins; ++b) {
    const double lo = r_min * std::pow(ratio, b);
    const double hi = std::min(r_max, lo * ratio);
    const double top = hi * (1.0 - 1e-9);  // bins are half-open
    int probes = opt.coarse_samples;
    if (opt.probes_per_period > 0) {
      probes = std::max(probes, static_cast<int>(std::ceil(opt.probes_per_period * (hi - lo) / opt.period)));
    }
    std::vector<DecaySample> coarse(static_cast<std::size_t>(probes));
    for (int j = 0; j < probes; ++j) {
      const double r = lo * std::pow(hi / lo, (j + 0.5) / probes);
      coarse[static_cast<std::size_t>(j)] = {r, f(r)};
    }
    // local maxima of the probe sequence, highest first
    std::vector<std::size_t> peaks;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
      const bool left = j == 0 || coarse[j].value >= coarse[j - 1].value;
      const bool right = j + 1 == coarse.size() || coarse[j].value >= coarse[j + 1].value;
      if (left && right) peaks.push_back(j);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t x, std::size_t y) { return coarse[x].value > coarse[y].value; });
    if (peaks.size() > static_cast<std::size_t>(opt.refine_peaks)) peaks.resize(static_cast<std::size_t>(opt.refine_peaks));

    DecaySample best{lo, -1.0};
    for (const auto& c : coarse) {
      if (c.value > best.value) best = c;
    }
    for (std::size_t j : peaks) {
      DecaySample local = coarse[j];
      // dense scan over one period either side of the probe
      const double a = std::max(lo, local.radius - opt.period);
      const double c = std::min(top, local.radius + opt.period);
      const int dense = 32;
      const double step = (c - a) / dense;
      for (int k = 0; k <= dense; ++k) {
        const double r = a + step * k;
        const double v = f(r);
        if (v > local.value) local = {r, v};
      }
      // golden-section polish inside the neighbouring dense cells
      double x0 = std::max(lo, local.radius - step), x3 = std::min(top, local.radius + step);
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double x1 = x3 - g * (x3 - x0), x2 = x0 + g * (x3 - x0);
      double f1 = f(x1), f2 = f(x2);
      for (int it = 0; it < 40 && x3 - x0 > 1e-12 * x3; ++it) {
        if (f1 > f2) {
          x3 = x2;
          x2 = x1;
          f2 = f1;
          x1 = x3 - g * (x3 - x0);
          f1 = f(x1);
        } else {
          x0 = x1;
          x1 = x2;
          f1 = f2;
          x2 = x0 + g * (x3 - x0);
          f2 = f(x2);
        }
      }
      if (f1 > local.value) local = {x1, f1};
      if (f2 > local.value) local = {x2, f2};
      if (local.value > best.value) best = local;
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace kdist
