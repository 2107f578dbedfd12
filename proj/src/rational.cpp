#include "kdist/rational.hpp"

#include <cmath>
#include <numeric>

#include "kdist/error.hpp"

namespace kdist {

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ArgumentError("rational_from_double: non-finite value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ArgumentError("empty rational literal");
  const auto dot = text.find('.');
  const auto exp = text.find_first_of("eE");
  try {
    if (dot == std::string::npos && exp == std::string::npos) {
      Rational r(text, 10);
      if (r.get_den() == 0) throw ArgumentError("zero denominator in '" + text + "'");
      r.canonicalize();
      return r;
    }
    if (exp != std::string::npos) {
      // scientific notation: accept through double, which is exact for the
      // values used in grids (powers of ten are not, so keep these rare)
      return rational_from_double(std::stod(text));
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const auto frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw ArgumentError("bad literal");
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ArgumentError("malformed rational literal '" + text + "'");
  }
}

Fraction::Fraction(std::int64_t n, std::int64_t d) {
  if (d == 0) throw ArgumentError("Fraction: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

}  // namespace kdist
