#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace kdist {

__extension__ typedef __int128 int128;

/// Arbitrary-precision exact rational.
using Rational = mpq_class;

/// "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

/// Exact value of a finite double as a rational (every double is dyadic).
Rational rational_from_double(double x);

inline double to_double(const Rational& r) { return r.get_d(); }

/// Parses "p/q", "p" or a decimal literal such as "0.25" exactly.
Rational parse_rational(const std::string& text);

/// Reduced fraction of 64-bit integers with a positive denominator.
///
/// Used as the exact key for distance values; comparisons go through
/// 128-bit cross multiplication so they never overflow for 64-bit inputs.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    const int128 lhs = static_cast<int128>(a.num) * b.den;
    const int128 rhs = static_cast<int128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

}  // namespace kdist
