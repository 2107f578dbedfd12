#pragma once

#include <string>

#include "kdist/convex_body.hpp"
#include "kdist/ini.hpp"

namespace kdist {

/// Builds a body from a [body] config section.
///
///   kind = disk | square | polygon | rational_polygon | ellipsoid | lp_ball
///        | box | radial | random_polygon
///
///   polygon            vertices = x y; x y; ...      (counterclockwise)
///                      half = true                   (list holds one half only)
///   rational_polygon   vertices = integer pairs, denominator = n
///   ellipsoid          semi_axes = a b [c ...]
///   lp_ball            dim = d, p = <real> | inf
///   box                half_widths = h1 h2 [...]
///   radial             radii = r_0 ... r_{N-1}       (theta_k = 2 pi k / N)
///   random_polygon     half_vertices = k, seed = s
ConvexBody body_from_section(const IniSection& section);

/// Convenience for tests and the CLI: parses text holding a [body] section.
ConvexBody body_from_text(const std::string& text);

}  // namespace kdist
