#pragma once

#include <gmpxx.h>

#include <string>

namespace dsslp {

// Exact rational scalar used throughout: entropies, LP data, probabilities.
using Rational = mpq_class;

// Parses "p/q", a plain integer, or a decimal such as "0.25" or "-1.5e-2"
// into an exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string fraction_string(const Rational& q);

// Decimal rendering with the given number of significant digits.
std::string decimal_string(const Rational& q, int significant_digits = 12);

double to_double(const Rational& q);

}  // namespace dsslp
