#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace elicit {

/// Arbitrary-precision rational; always kept in canonical form.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Parses "3/5", "-2", "0.125" or "+1.5" exactly. Decimals are read as
/// base-10 rationals, so "0.1" is exactly 1/10. Throws InputError.
Rational parse_rational(std::string_view text);

/// "44/25", "-1", "0".
std::string to_fraction_string(const Rational& value);

/// Decimal rendering rounded half away from zero to at most `digits`
/// fractional digits, trailing zeros removed ("1.76", "-0.62", "0.333333").
std::string to_decimal_string(const Rational& value, int digits = 6);

double to_double(const Rational& value);

Rational abs(const Rational& value);

}  // namespace elicit
