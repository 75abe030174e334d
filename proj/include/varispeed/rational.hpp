#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace varispeed {

using Rational = mpq_class;

/// Parses "p/q", "p", or a decimal such as "0.25" or "1e-3" into an exact rational.
Rational parse_rational(const std::string& text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Exact conversion of a finite double.
Rational from_double(double x);

/// b^e for any integer exponent (b must be nonzero when e < 0).
Rational pow_int(const Rational& b, long e);

/// base^exponent when the result is rational (base >= 0), otherwise nullopt.
std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace varispeed
