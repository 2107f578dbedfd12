#pragma once

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kdist {

/// One "[section]" of a key = value config file. Every accessor reports the
/// line and field name of a malformed value through ConfigError.
class IniSection {
 public:
  IniSection() = default;
  IniSection(std::string name, int line) : name_(std::move(name)), line_(line) {}

  const std::string& name() const { return name_; }
  int line() const { return line_; }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  int line_of(const std::string& key) const;

  void set(const std::string& key, std::string value, int line);

  std::optional<std::string> get(const std::string& key) const;
  std::string require(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Whitespace- or comma-separated numbers; "inf" accepted.
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<long long> get_ints(const std::string& key) const;

  /// Rejects keys not in the allowed list.
  void check_keys(std::initializer_list<const char*> allowed) const;

  const std::map<std::string, std::pair<std::string, int>>& entries() const { return entries_; }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  std::string name_;
  int line_ = 0;
  std::map<std::string, std::pair<std::string, int>> entries_;
};

class IniDocument {
 public:
  static IniDocument parse(std::istream& in);
  static IniDocument parse_string(const std::string& text);
  static IniDocument parse_file(const std::filesystem::path& path);

  bool has_section(const std::string& name) const { return sections_.count(name) != 0; }
  /// Throws ConfigError when the section is missing.
  const IniSection& section(const std::string& name) const;
  /// Empty section when missing.
  const IniSection& section_or_empty(const std::string& name) const;
  std::vector<std::string> section_names() const;

 private:
  std::map<std::string, IniSection> sections_;
  IniSection empty_;
};

/// Parses one number of a config value ("inf", "1/3" and decimals accepted).
double parse_number(const std::string& token);

}  // namespace kdist
