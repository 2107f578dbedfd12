#include "kdist/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kdist/error.hpp"

namespace kdist {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 90, kRight = 30, kTop = 50, kBottom = 110;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// signed numbers use the typographic minus sign
std::string signed_fixed(double v) {
  const std::string s = fmt("%.2f", std::abs(v));
  return (v < 0 && s != "0.00" ? "−" : "") + s;
}

}  // namespace

std::string emit_plot(const PlotData& data) {
  if (data.samples.size() < 2) throw ArgumentError("a plot needs at least two samples");
  std::vector<DecaySample> pts;
  for (const auto& s : data.samples) {
    if (s.radius > 0.0 && s.value > 0.0 && std::isfinite(s.radius) && std::isfinite(s.value)) pts.push_back(s);
  }
  const std::size_t dropped = data.samples.size() - pts.size();
  if (pts.empty()) throw InsufficientDataError("no positive samples left to plot");

  double x0 = std::log10(pts.front().radius), x1 = x0, y0 = std::log10(pts.front().value), y1 = y0;
  for (const auto& p : pts) {
    x0 = std::min(x0, std::log10(p.radius));
    x1 = std::max(x1, std::log10(p.radius));
    y0 = std::min(y0, std::log10(p.value));
    y1 = std::max(y1, std::log10(p.value));
  }
  auto fit_value = [&](double r) {
    const auto& f = *data.fit;
    return std::log10(f.C) + f.log_power * std::log10(std::log(r)) - f.gamma * std::log10(r);
  };
  if (data.fit && data.fit->C > 0.0) {
    for (const auto& p : pts) {
      if (p.radius > 1.0) {
        y0 = std::min(y0, fit_value(p.radius));
        y1 = std::max(y1, fit_value(p.radius));
      }
    }
  }
  // decade-aligned axes with at least one decade of span
  x0 = std::floor(x0);
  x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0);
  y1 = std::max(std::ceil(y1), y0 + 1);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - x0) / (x1 - x0) * pw; };
  auto py = [&](double ly) { return kTop + (y1 - ly) / (y1 - y0) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
         escape(data.title) + "</text>\n";
  svg += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) + "\" width=\"" + fmt("%.2f", pw) +
         "\" height=\"" + fmt("%.2f", ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = x0; d <= x1 + 1e-9; d += 1.0) {
    const std::string X = fmt("%.2f", px(d));
    svg += "<line x1=\"" + X + "\" y1=\"" + fmt("%.2f", kTop + ph) + "\" x2=\"" + X + "\" y2=\"" + fmt("%.2f", kTop) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + X + "\" y=\"" + fmt("%.2f", kTop + ph + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" + fmt("%.0f", d) + "</text>\n";
  }
  for (double d = y0; d <= y1 + 1e-9; d += 1.0) {
    const std::string Y = fmt("%.2f", py(d));
    svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + Y + "\" x2=\"" + fmt("%.2f", kLeft + pw) + "\" y2=\"" + Y +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", kLeft - 8) + "\" y=\"" + Y +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" + fmt("%.0f", d) + "</text>\n";
  }
  svg += "<text x=\"" + fmt("%.2f", kLeft + pw / 2) + "\" y=\"" + fmt("%.2f", kTop + ph + 42) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + escape(data.x_label) + "</text>\n";
  svg += "<text x=\"24\" y=\"" + fmt("%.2f", kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 24 " +
         fmt("%.2f", kTop + ph / 2) + ")\" font-family=\"sans-serif\" font-size=\"14\">" + escape(data.y_label) +
         "</text>\n";

  for (const auto& p : pts) {
    svg += "<circle cx=\"" + fmt("%.2f", px(std::log10(p.radius))) + "\" cy=\"" + fmt("%.2f", py(std::log10(p.value))) +
           "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
  }

  std::string caption;
  if (data.fit) {
    const auto& f = *data.fit;
    std::string poly;
    const double lo = std::max(pts.front().radius, 1.0 + 1e-9), hi = pts.back().radius;
    if (f.C > 0.0 && hi > lo) {
      constexpr int steps = 64;
      for (int i = 0; i <= steps; ++i) {
        const double r = lo * std::pow(hi / lo, static_cast<double>(i) / steps);
        if (i) poly += ' ';
        poly += fmt("%.2f", px(std::log10(r))) + "," + fmt("%.2f", py(fit_value(r)));
      }
      svg += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
    caption = "slope " + signed_fixed(-f.gamma) + "   gamma = " + fmt("%.3f", f.gamma) + "   C = " + fmt("%.4g", f.C) +
              "   residual = " + fmt("%.3g", f.residual);
    if (f.log_correction) caption += "   log power = " + fmt("%.0f", f.log_power);
  } else {
    caption = "no fit";
  }
  if (dropped > 0) caption += "   (" + std::to_string(dropped) + " non-positive samples dropped)";
  svg += "<text x=\"400\" y=\"" + fmt("%.2f", kHeight - 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + escape(caption) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace kdist
