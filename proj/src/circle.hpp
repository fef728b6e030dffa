#pragma once

// Conversions between the normalized circle coordinate t (w = exp(2 pi i t))
// and x = cos(2 pi t), with rigorous rational enclosures.

#include "rhokit/poly.hpp"
#include "rhokit/rational.hpp"

#include <optional>

namespace rhokit::detail {

/// Closed rational interval.
struct Enclosure {
  Rational lo;
  Rational hi;
};

/// Rigorous enclosure of cos(2 pi t) for t in [0, 1/2].
Enclosure cos_turns(const Rational& t);

/// Given an interval [x_lo, x_hi] strictly inside (-1, 1) containing a root
/// x*, returns a rational interval in (0, 1/2) certified to contain
/// arccos(x*) / (2 pi). Endpoints are dyadic. Returns nullopt when the
/// enclosure cannot be certified at this x-width; refine x and retry.
std::optional<RootInterval> turns_from_cos(const RootInterval& x);

/// Polynomial P in x with P(cos 2 pi t) = exp(-2 pi i h t) * D(exp(2 pi i t)) for a
/// palindromic D of degree 2h. Throws if D is not palindromic of even degree.
Polynomial chebyshev_reduce(const Polynomial& palindromic);

/// Rational u > 0 whose circle point (1-u^2 + 2ui)/(1+u^2) has turn coordinate
/// strictly inside (a, b), where 0 <= a < b <= 1/2.
Rational tangent_sample(const Rational& a, const Rational& b, unsigned attempt = 0);

}  // namespace rhokit::detail
