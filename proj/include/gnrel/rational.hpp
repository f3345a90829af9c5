#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gnrel {

/// Exact arbitrary-precision rational. All probabilities, gamble values,
/// stakes and gains are carried in this type.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "-0.35".
/// Throws DomainError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& value);

}  // namespace gnrel
