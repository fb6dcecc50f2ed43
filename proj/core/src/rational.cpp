#include "fractsob/rational.hpp"

#include "fractsob/errors.hpp"

namespace fractsob {

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string fraction_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_fraction(std::string_view text) {
  if (text.empty()) throw ParameterError("empty fraction");
  const std::size_t slash = text.find('/');
  const auto parse_int = [&](std::string_view part) -> BigInt {
    if (part.empty()) throw ParameterError("malformed fraction: " + std::string(text));
    std::size_t i = 0;
    bool neg = false;
    if (part[0] == '-' || part[0] == '+') {
      neg = part[0] == '-';
      i = 1;
      if (part.size() == 1) throw ParameterError("malformed fraction: " + std::string(text));
    }
    BigInt v(0);
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9')
        throw ParameterError("malformed fraction: " + std::string(text));
      v = v * 10 + (part[i] - '0');
    }
    return neg ? -v : v;
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParameterError("zero denominator: " + std::string(text));
  return Rational(num, den);
}

Rational rational_pow(const Rational& base, int exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0 && exponent < 0) throw ParameterError("zero base with negative exponent");
  Rational acc(1);
  Rational b = exponent > 0 ? base : Rational(1) / base;
  int e = exponent > 0 ? exponent : -exponent;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

bool lex_less(const Coord& a, const Coord& b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

std::string coord_string(const Coord& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += fraction_string(c[i]);
  }
  out += ")";
  return out;
}

}  // namespace fractsob
