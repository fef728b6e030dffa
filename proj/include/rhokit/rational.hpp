#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace rhokit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num / den for any nonzero den (the Boost rational constructor rejects
/// negative denominators).
inline Rational make_rational(BigInt num, BigInt den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Renders an exact rational as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "p", "p/q", or a finite decimal literal such as "-1.25" or "3e-2".
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational from_double(double x);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace rhokit
