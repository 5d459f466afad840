#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nltl {

using Rational = mpq_class;

/// Parses an exact rational from an integer ("3"), decimal ("-3.25") or
/// fraction ("7/2") literal. Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Decimal rendering. Exact when the denominator has only factors 2 and 5
/// (always the case for bisection-generated points), otherwise rounded to
/// `digits` fractional digits and suffixed with "...".
std::string to_decimal(const Rational& value, int digits = 12);

/// Canonical num/den. Two-argument mpq_class construction does not reduce
/// the fraction, and GMP arithmetic assumes reduced operands.
inline Rational ratio(const mpz_class& num, const mpz_class& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}
inline Rational ratio(long num, long den) { return ratio(mpz_class(num), mpz_class(den)); }

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace nltl
