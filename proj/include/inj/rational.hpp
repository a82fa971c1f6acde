#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace inj {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses an integer, `p/q` fraction, or decimal literal (optionally with an
/// exponent) into an exact rational. `1.3` becomes 13/10, never a rounded
/// binary value. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: `p` for integers, `p/q` otherwise.
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return q.sign(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// The exact binary value of a finite double.
Rational exact_from_double(double value);

}  // namespace inj
