#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the exact machinery it is used to check.

#include "rhokit/seifert.hpp"

#include <map>
#include <vector>

namespace rhokit::oracle {

/// Levine-Tristram signature at w = exp(2 pi i t) by floating-point Hermitian
/// eigenvalues. Eigenvalues within 1e-9 of zero count as zero.
int numeric_signature(const seifert::SeifertMatrix& v, double t);

/// Periodic trapezoid rule over `samples` uniform angles of the numeric signature.
double dense_rho0(const seifert::SeifertMatrix& v, int samples);

/// Sign of the real trigonometric polynomial exp(-pi i d t) p(exp(2 pi i t)) for
/// a palindromic p of degree d (imaginary part for anti-palindromic p), in
/// 50-digit floating point.
int circle_sign(const Polynomial& p, const Rational& t);

/// Commutative Laurent polynomial in m variables, keyed by exponent vector.
using Laurent = std::map<std::vector<int>, long>;

/// Fox derivatives of a word (list of signed 1-based generator indices)
/// pushed to Z[Z^m]. Returns one Laurent polynomial per generator.
std::vector<Laurent> abelian_fox(const std::vector<int>& letters, int rank);

/// w in F^(2) iff exponent sums vanish and every abelianized Fox derivative is zero.
bool in_second_derived(const std::vector<int>& letters, int rank);

}  // namespace rhokit::oracle
