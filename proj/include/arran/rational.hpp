#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "arran/errors.hpp"

namespace arran::exact {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Parses "p" or "p/q" (optional leading '-'). Result is always reduced with
// positive denominator.
Rational parse_rational(const std::string& s);

// "p/q" with "/q" omitted when the denominator is 1.
std::string rational_to_string(const Rational& r);

inline Integer int_gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer int_lcm(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }

} // namespace arran::exact
