#pragma once

#include "rhokit/poly.hpp"
#include "rhokit/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rhokit::seifert {

/// Integer matrix presenting the Seifert form of a knot.
///
/// Construction enforces an even size and det(V - V^T) = 1. The 0x0 matrix is
/// the unknot.
class SeifertMatrix {
 public:
  SeifertMatrix() = default;
  /// Throws PreconditionError when the matrix is not square, has odd size, or
  /// fails det(V - V^T) = 1.
  explicit SeifertMatrix(std::vector<std::vector<std::int64_t>> rows, std::string name = {});

  std::size_t size() const { return rows_.size(); }
  std::size_t genus() const { return rows_.size() / 2; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<std::int64_t>>& rows() const { return rows_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Entrywise equality; names are ignored.
  friend bool operator==(const SeifertMatrix& a, const SeifertMatrix& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<std::vector<std::int64_t>> rows_;
  std::string name_;
};

/// Named knots: "unknot", "trefoil", "figure8", "twist(k)".
/// Throws PreconditionError for unknown names.
SeifertMatrix registry_knot(const std::string& name);

/// Genus-one matrix [[a, b+1], [b, c]]; always a valid Seifert matrix.
SeifertMatrix genus_one(std::int64_t a, std::int64_t b, std::int64_t c);

/// Reproducible corpus: block sums of 1..max_blocks genus-one matrices with
/// a, b, c drawn uniformly from [-5, 5].
std::vector<SeifertMatrix> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_blocks = 3);

/// Point of Q(i).
struct GaussianRational {
  Rational re;
  Rational im;
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
  GaussianRational conj() const { return {re, -im}; }
};

/// Dense square matrix over Q(i), row-major.
struct ComplexMatrix {
  std::size_t n = 0;
  std::vector<GaussianRational> data;
  const GaussianRational& operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  GaussianRational& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  bool is_hermitian() const;
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;
};

/// Rational point on the unit circle ((1-u^2) + 2ui) / (1+u^2).
GaussianRational circle_point(const Rational& u);

/// (1 - w) V + (1 - conj w) V^T. Requires |w| = 1 exactly and w != 1.
ComplexMatrix symmetrized_form(const SeifertMatrix& v, const GaussianRational& omega);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int signature() const { return positive - negative; }
};

/// Exact inertia of a Hermitian matrix over Q(i).
Inertia hermitian_inertia(const ComplexMatrix& h);

/// Exact inertia of a real symmetric rational matrix (row-major, n x n).
Inertia symmetric_inertia(std::vector<Rational> a, std::size_t n);

/// det(V - t V^T), normalized to lowest exponent 0 and positive leading term.
Polynomial alexander_polynomial(const SeifertMatrix& v);

/// An isolating interval in the normalized circle coordinate t in (0, 1).
struct Breakpoint {
  RootInterval t;
  /// Set when the breakpoint is the root of unity exp(2 pi i k/n); t is then exact.
  std::optional<std::pair<unsigned, unsigned>> root_of_unity;
  Rational midpoint() const { return (t.lo + t.hi) / 2; }
};

/// Default width target for breakpoint intervals.
inline const Rational kDefaultBreakpointWidth{Rational(1, 1) / (BigInt(1) << 44)};

/// Certified isolating intervals for all unit-circle roots of the Alexander
/// polynomial, sorted, pairwise disjoint, and symmetric under t -> 1 - t.
/// Every non-exact interval has width <= max_width.
std::vector<Breakpoint> circle_roots(const SeifertMatrix& v, const Rational& max_width = kDefaultBreakpointWidth);

/// Piecewise-constant Levine-Tristram signature on the normalized circle.
///
/// `values[0]` is the arc that wraps through t = 0; for 1 <= i < breakpoints.size(),
/// `values[i]` is the arc between breakpoints i-1 and i. Undefined at breakpoints.
struct SignatureFunction {
  std::vector<Breakpoint> breakpoints;
  std::vector<int> values;

  /// Value at t in [0, 1); nullopt when t lies in a breakpoint interval.
  std::optional<int> at(const Rational& t) const;
  /// Jump across breakpoint i (value after minus value before).
  int jump(std::size_t i) const;
};

SignatureFunction signature_function(const SeifertMatrix& v, const Rational& max_width = kDefaultBreakpointWidth);

/// A real number carried as an exact rational estimate with a rigorous
/// absolute error bound.
struct Rho0Value {
  Rational value;
  Rational error_bound;

  bool exact() const { return error_bound == 0; }
  double approx() const { return to_double(value); }

  friend Rho0Value operator+(const Rho0Value& a, const Rho0Value& b) {
    return {a.value + b.value, a.error_bound + b.error_bound};
  }
  friend Rho0Value operator-(const Rho0Value& a) { return {-a.value, a.error_bound}; }
  friend Rho0Value operator*(long k, const Rho0Value& a) {
    return {a.value * k, a.error_bound * (k < 0 ? -k : k)};
  }
  friend bool operator==(const Rho0Value&, const Rho0Value&) = default;
};

/// Integral of the signature function over the circle of length 1.
/// The error bound is at most `tolerance` (0 when every breakpoint is a root of unity).
Rho0Value rho0(const SeifertMatrix& v, const Rational& tolerance = Rational(1, 1000000000000LL));

/// Integral of a given signature function, error bound from its interval widths.
Rho0Value integrate(const SignatureFunction& sigma);

/// 0 iff Alexander(-1) = +-1 mod 8.
int arf(const SeifertMatrix& v);

/// Block-diagonal sum.
SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b);

/// -V^T.
SeifertMatrix mirror(const SeifertMatrix& v);

/// k-fold connected sum of v (k >= 0) or of mirror(v) (k < 0).
SeifertMatrix multiple(const SeifertMatrix& v, long k);

}  // namespace rhokit::seifert
