#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace kdist {

using Json = nlohmann::json;

/// A pass/fail judgement together with the threshold it was judged against.
struct Verdict {
  std::string name;
  double value = 0.0;
  /// "<=", ">=", "<", ">", "==", or "in" (closed range [lo, hi])
  std::string comparison;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;

  static Verdict at_most(std::string name, double value, double limit);
  static Verdict at_least(std::string name, double value, double limit);
  static Verdict below(std::string name, double value, double limit);
  static Verdict above(std::string name, double value, double limit);
  static Verdict within(std::string name, double value, double lo, double hi);
  static Verdict holds(std::string name, bool condition);

  std::string threshold_text() const;
  Json to_json() const;
};

struct Report {
  std::string command;
  Json config = Json::object();
  Json meta = Json::object();
  Json results = Json::object();
  std::vector<Verdict> verdicts;

  bool passed() const;
  Json to_json() const;
  /// Pretty-printed JSON with sorted keys and a trailing newline.
  std::string dump() const;
};

/// Shortest round-trip decimal for a double; "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

/// JSON number, or null for non-finite values.
Json json_number(double v);

/// Comma-separated table with a header row and '\n' line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace kdist
