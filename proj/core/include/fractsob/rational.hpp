#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace fractsob {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Point of the ambient space with exact coordinates.
using Coord = std::vector<Rational>;

double to_double(const Rational& q);

// "p/q" with positive denominator; plain "p" when the denominator is 1.
std::string fraction_string(const Rational& q);

// Accepts "p", "-p" or "p/q".
Rational parse_fraction(std::string_view text);

Rational rational_pow(const Rational& base, int exponent);

bool lex_less(const Coord& a, const Coord& b);

// "(x0, x1, ...)" with exact fraction entries.
std::string coord_string(const Coord& c);

}  // namespace fractsob
