#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace projkit {

// mpq_class keeps values canonical (lowest terms, positive denominator) as
// long as every construction from a raw numerator/denominator pair goes
// through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer &num, const Integer &den);

/// Accepts "p", "-p" and "p/q". Throws Error(SyntaxError) otherwise.
Rational parse_rational(std::string_view text);

/// "p/q", with the denominator omitted when it is 1.
std::string to_string(const Rational &r);

/// Rational square root if one exists.
bool rational_sqrt(const Rational &r, Rational &root);

Rational pow(const Rational &base, long exponent);

} // namespace projkit
