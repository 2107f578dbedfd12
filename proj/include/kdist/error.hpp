#pragma once

#include <stdexcept>
#include <string>

namespace kdist {

/// Invalid argument or violated precondition (empty grid, bad exponent, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric parameter outside its admissible range (e.g. chord depth >= width).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The requested (body, dimension, mode) combination is not supported.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough usable samples to produce a fit or a growth estimate.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structured config could not be parsed or validated.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& what)
      : std::runtime_error(format(line, field, what)), line_(line), field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(int line, const std::string& field, const std::string& what) {
    std::string out = "config error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " in field '" + field + "'";
    return out + ": " + what;
  }

  int line_;
  std::string field_;
};

}  // namespace kdist
