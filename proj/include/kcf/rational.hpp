#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kcf {

using Rational = mpq_class;

/// Parses "7", "-2", "1/3", "0.25", "-1.5e-3" into an exact rational.
/// Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite binary64 via its shortest round-trip
/// decimal representation (0.1 -> 1/10).
Rational rational_from_double(double value);

std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace kcf
