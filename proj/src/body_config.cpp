#include "kdist/body_config.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "kdist/error.hpp"

namespace kdist {

namespace {

std::vector<std::vector<std::string>> split_vertices(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<std::string> coords;
    std::string cur;
    for (char c : group + " ") {
      if (c == ' ' || c == '\t' || c == ',') {
        if (!cur.empty()) coords.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!coords.empty()) out.push_back(std::move(coords));
  }
  return out;
}

}  // namespace

ConvexBody body_from_section(const IniSection& s) {
  const std::string kind = s.require("kind");
  const auto field = [&](const char* key) { return s.name() + "." + key; };
  try {
    if (kind == "disk") {
      s.check_keys({"kind", "radius"});
      return ConvexBody::euclidean_ball(2, s.get_double("radius", 1.0));
    }
    if (kind == "square") {
      s.check_keys({"kind"});
      return ConvexBody::unit_square();
    }
    if (kind == "polygon") {
      s.check_keys({"kind", "vertices", "half"});
      std::vector<Vec2> v;
      for (const auto& c : split_vertices(s.require("vertices"))) {
        if (c.size() != 2) throw ConfigError(s.line_of("vertices"), field("vertices"), "each vertex needs 2 coordinates");
        v.push_back({parse_number(c[0]), parse_number(c[1])});
      }
      if (s.get_bool("half", false)) return ConvexBody::symmetric_polygon(v);
      return ConvexBody::polygon(std::move(v));
    }
    if (kind == "rational_polygon") {
      s.check_keys({"kind", "vertices", "denominator", "half"});
      std::vector<std::array<std::int64_t, 2>> v;
      for (const auto& c : split_vertices(s.require("vertices"))) {
        if (c.size() != 2) throw ConfigError(s.line_of("vertices"), field("vertices"), "each vertex needs 2 integers");
        std::array<std::int64_t, 2> p{};
        for (int i = 0; i < 2; ++i) {
          std::size_t used = 0;
          try {
            p[static_cast<std::size_t>(i)] = std::stoll(c[static_cast<std::size_t>(i)], &used);
          } catch (const std::logic_error&) {
            used = 0;
          }
          if (used != c[static_cast<std::size_t>(i)].size()) {
            throw ConfigError(s.line_of("vertices"), field("vertices"), "rational vertices must be integers");
          }
        }
        v.push_back(p);
      }
      if (s.get_bool("half", false)) {
        const std::size_t k = v.size();
        for (std::size_t i = 0; i < k; ++i) v.push_back({-v[i][0], -v[i][1]});
      }
      return ConvexBody::rational_polygon(std::move(v), s.get_int("denominator", 1));
    }
    if (kind == "ellipsoid") {
      s.check_keys({"kind", "semi_axes"});
      return ConvexBody::ellipsoid(s.get_doubles("semi_axes"));
    }
    if (kind == "lp_ball") {
      s.check_keys({"kind", "dim", "p"});
      return ConvexBody::lp_ball(static_cast<int>(s.get_int("dim", 2)), s.require_double("p"));
    }
    if (kind == "box") {
      s.check_keys({"kind", "half_widths"});
      return ConvexBody::box(s.get_doubles("half_widths"));
    }
    if (kind == "radial") {
      s.check_keys({"kind", "radii"});
      return ConvexBody::radial(s.get_doubles("radii"));
    }
    if (kind == "random_polygon") {
      s.check_keys({"kind", "half_vertices", "seed"});
      return ConvexBody::random_symmetric_polygon(static_cast<int>(s.get_int("half_vertices", 3)),
                                                  static_cast<std::uint64_t>(s.get_int("seed", 1)));
    }
  } catch (const ArgumentError& e) {
    // blame the field that carries the geometry of this kind
    static const std::map<std::string, const char*> data_key{
        {"disk", "radius"},      {"polygon", "vertices"},    {"rational_polygon", "vertices"},
        {"ellipsoid", "semi_axes"}, {"lp_ball", "p"},        {"box", "half_widths"},
        {"radial", "radii"},     {"random_polygon", "half_vertices"}};
    const auto it = data_key.find(kind);
    if (it != data_key.end() && s.has(it->second)) throw ConfigError(s.line_of(it->second), field(it->second), e.what());
    throw ConfigError(s.line(), s.name(), e.what());
  }
  throw ConfigError(s.line_of("kind"), field("kind"), "unknown body kind '" + kind + "'");
}

ConvexBody body_from_text(const std::string& text) {
  return body_from_section(IniDocument::parse_string(text).section("body"));
}

}  // namespace kdist
