#include "kdist/report.hpp"

#include <charconv>
#include <cmath>

#include "kdist/error.hpp"

namespace kdist {

Verdict Verdict::at_most(std::string name, double value, double limit) {
  return {std::move(name), value, "<=", limit, limit, value <= limit};
}

Verdict Verdict::at_least(std::string name, double value, double limit) {
  return {std::move(name), value, ">=", limit, limit, value >= limit};
}

Verdict Verdict::below(std::string name, double value, double limit) {
  return {std::move(name), value, "<", limit, limit, value < limit};
}

Verdict Verdict::above(std::string name, double value, double limit) {
  return {std::move(name), value, ">", limit, limit, value > limit};
}

Verdict Verdict::within(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, "in", lo, hi, value >= lo && value <= hi};
}

Verdict Verdict::holds(std::string name, bool condition) {
  return {std::move(name), condition ? 1.0 : 0.0, "==", 1.0, 1.0, condition};
}

std::string Verdict::threshold_text() const {
  if (comparison == "in") return "in [" + format_number(lo) + ", " + format_number(hi) + "]";
  return comparison + " " + format_number(lo);
}

Json Verdict::to_json() const {
  return Json{{"name", name}, {"value", json_number(value)}, {"threshold", threshold_text()}, {"pass", pass}};
}

bool Report::passed() const {
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

Json Report::to_json() const {
  Json v = Json::array();
  for (const auto& x : verdicts) v.push_back(x.to_json());
  return Json{{"command", command}, {"config", config}, {"meta", meta}, {"results", results},
              {"verdicts", v},      {"passed", passed()}};
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw ArgumentError("CSV row width differs from the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

}  // namespace kdist
