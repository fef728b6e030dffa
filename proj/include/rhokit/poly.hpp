#pragma once

#include "rhokit/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rhokit {

/// Dense univariate polynomial with exact rational coefficients, stored from
/// the constant term upward. The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(Rational c);
  static Polynomial monomial(Rational c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  bool is_integral() const;
  /// True when coefficients read the same forwards and backwards.
  bool is_palindromic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Euclidean division over Q; throws on a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  static Polynomial gcd(Polynomial a, Polynomial b);

  /// Renders with variable name, e.g. "t^2 - t + 1".
  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// n-th cyclotomic polynomial, integer coefficients.
Polynomial cyclotomic(unsigned n);

/// Euler totient.
unsigned totient(unsigned n);

/// Square-free part p / gcd(p, p'), made monic.
Polynomial squarefree_part(const Polynomial& p);

/// A closed rational interval [lo, hi]; lo == hi marks an exactly known root.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

/// Isolates the distinct real roots of `p` lying strictly inside (lo, hi)
/// using Sturm sequences and exact bisection. Each returned interval holds
/// exactly one root; non-exact intervals have endpoints where p is nonzero.
/// Intervals are sorted and pairwise disjoint. `p` must be nonzero.
std::vector<RootInterval> isolate_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi);

/// Shrinks an isolating interval of a square-free polynomial below `max_width`
/// by sign bisection.
RootInterval refine_root(const Polynomial& squarefree, RootInterval iv, const Rational& max_width);

}  // namespace rhokit
