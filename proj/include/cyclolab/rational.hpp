#pragma once

#include <gmpxx.h>

#include <string>

namespace cyclolab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.25" exactly.
Rational parse_rational(const std::string& text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace cyclolab
