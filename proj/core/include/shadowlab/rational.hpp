#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace shadowlab {

/// Arbitrary-precision exact rational. Arithmetic keeps canonical form
/// (lowest terms, positive denominator).
using Rational = mpq_class;

/// Parses "p/q" or "n". Rejects anything non-canonical: q must be positive,
/// gcd(p,q) = 1, no leading zeros, no whitespace.
Rational parse_rational(const std::string& text);

/// Canonical shortest form: "n" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

/// Exact square root when numerator and denominator are both perfect squares.
std::optional<Rational> exact_sqrt(const Rational& value);

}  // namespace shadowlab
