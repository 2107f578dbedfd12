#include "kdist/ini.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "kdist/error.hpp"

namespace kdist {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

double parse_number(const std::string& token) {
  if (token == "inf" || token == "+inf" || token == "infinity") return std::numeric_limits<double>::infinity();
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  const auto slash = token.find('/');
  std::size_t used = 0;
  if (slash != std::string::npos) {
    const double num = parse_number(token.substr(0, slash));
    const double den = parse_number(token.substr(slash + 1));
    if (den == 0.0) throw ArgumentError("zero denominator");
    return num / den;
  }
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + token + "'");
  }
  if (used != token.size()) throw ArgumentError("not a number: '" + token + "'");
  return v;
}

int IniSection::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? line_ : it->second.second;
}

void IniSection::set(const std::string& key, std::string value, int line) {
  entries_[key] = {std::move(value), line};
}

void IniSection::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(line_of(key), name_.empty() ? key : name_ + "." + key, what);
}

std::optional<std::string> IniSection::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.first;
}

std::string IniSection::require(const std::string& key) const {
  auto v = get(key);
  if (!v) fail(key, "required field is missing");
  return *v;
}

std::string IniSection::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double IniSection::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    return parse_number(*v);
  } catch (const ArgumentError& e) {
    fail(key, e.what());
  }
}

double IniSection::require_double(const std::string& key) const {
  require(key);
  return get_double(key, 0.0);
}

long long IniSection::get_int(const std::string& key, long long fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const long long r = std::stoll(*v, &used);
    if (used != v->size()) fail(key, "expected an integer, got '" + *v + "'");
    return r;
  } catch (const std::logic_error&) {
    fail(key, "expected an integer, got '" + *v + "'");
  }
}

bool IniSection::get_bool(const std::string& key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") return true;
  if (*v == "false" || *v == "no" || *v == "0" || *v == "off") return false;
  fail(key, "expected a boolean, got '" + *v + "'");
}

std::vector<double> IniSection::get_doubles(const std::string& key) const {
  std::vector<double> out;
  const auto v = get(key);
  if (!v) return out;
  for (const auto& t : split_tokens(*v)) {
    try {
      out.push_back(parse_number(t));
    } catch (const ArgumentError& e) {
      fail(key, e.what());
    }
  }
  return out;
}

std::vector<long long> IniSection::get_ints(const std::string& key) const {
  std::vector<long long> out;
  const auto v = get(key);
  if (!v) return out;
  for (const auto& t : split_tokens(*v)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::logic_error&) {
      fail(key, "expected integers, got '" + t + "'");
    }
  }
  return out;
}

void IniSection::check_keys(std::initializer_list<const char*> allowed) const {
  for (const auto& [key, entry] : entries_) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(key, "unknown field");
  }
}

IniDocument IniDocument::parse(std::istream& in) {
  IniDocument doc;
  std::string raw;
  int line_no = 0;
  IniSection* current = &doc.sections_[""];
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "", "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError(line_no, "", "empty section name");
      if (doc.sections_.count(name) && name != "") throw ConfigError(line_no, name, "duplicate section");
      current = &doc.sections_[name];
      *current = IniSection(name, line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "empty key");
    if (current->has(key)) throw ConfigError(line_no, current->name() + "." + key, "duplicate key");
    current->set(key, value, line_no);
  }
  return doc;
}

IniDocument IniDocument::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

IniDocument IniDocument::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot open config file '" + path.string() + "'");
  return parse(in);
}

const IniSection& IniDocument::section(const std::string& name) const {
  const auto it = sections_.find(name);
  if (it == sections_.end()) throw ConfigError(0, name, "missing section [" + name + "]");
  return it->second;
}

const IniSection& IniDocument::section_or_empty(const std::string& name) const {
  const auto it = sections_.find(name);
  return it == sections_.end() ? empty_ : it->second;
}

std::vector<std::string> IniDocument::section_names() const {
  std::vector<std::string> out;
  for (const auto& [name, s] : sections_) {
    if (!name.empty()) out.push_back(name);
  }
  return out;
}

}  // namespace kdist
