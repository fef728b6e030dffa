#pragma once
// Example families of boundary links, rho_0 target approximation, and
// bounded integer-relation searches.

#include "rhokit/dsl.hpp"
#include "rhokit/errors.hpp"
#include "rhokit/infection.hpp"

#include <string>
#include <vector>

namespace rhokit::families {

using infection::Expr;
using seifert::Rho0Value;
using seifert::SeifertMatrix;

struct LibraryEntry {
  std::string name;
  SeifertMatrix matrix;
  Rho0Value rho0;
  int arf = 0;
};

/// Named knots with cached rho_0 and Arf invariants.
class KnotLibrary {
 public:
  explicit KnotLibrary(Rational tolerance = Rational(1, 1000000000000LL)) : tolerance_(std::move(tolerance)) {}

  /// trefoil, figure8 and twist(k) for k = -8..4, k != 0.
  static KnotLibrary standard();

  /// Throws PreconditionError on a duplicate name.
  const LibraryEntry& add(std::string name, SeifertMatrix matrix);
  const std::vector<LibraryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const LibraryEntry* find(const std::string& name) const;
  const Rational& tolerance() const { return tolerance_; }
  /// Resolver for the knot syntax.
  dsl::KnotResolver resolver() const;
  /// Recomputes every cached value; true when all agree.
  bool verify() const;

 private:
  Rational tolerance_;
  std::vector<LibraryEntry> entries_;
};

/// Failure of a bounded search, with the best distance seen.
class TargetUnreachable : public PreconditionError {
 public:
  TargetUnreachable(const std::string& msg, Rational best) : PreconditionError(msg), best_(std::move(best)) {}
  const Rational& best_distance() const { return best_; }

 private:
  Rational best_;
};

struct ApproximationOptions {
  /// Bound on sum |c_i| before scaling.
  int budget = 6;
};

struct Approximation {
  Rational target;
  Rational epsilon;
  /// Multiplier m with target / m in (-2, 2).
  long scale = 1;
  /// Final coefficient per library entry, scale already applied; zeros omitted.
  std::vector<std::pair<std::string, long>> terms;
  /// sum c_i rho0(K_i) from cached values.
  Rho0Value predicted;
  /// Block sum realizing the combination.
  SeifertMatrix realized;
  /// rho0 of the realized matrix recomputed from scratch.
  Rho0Value recomputed;
  /// Certified upper bound on |rho0(realized) - target|.
  Rational distance_bound;
};

/// Integer combination of library knots with certified |rho0 - r| < eps.
/// Throws TargetUnreachable when no combination within the budget works.
Approximation approximate_target(const Rational& r, const Rational& eps, const KnotLibrary& lib,
                                 const ApproximationOptions& options = {});

struct IndependenceCertificate {
  enum class Verdict { NoRelationUpTo, RelationFound };
  std::vector<std::string> labels;
  std::vector<Rho0Value> values;
  long bound = 0;
  Rational tolerance;
  Verdict verdict = Verdict::NoRelationUpTo;
  /// Canonical relation when found: smallest sum |c_i|, first nonzero entry positive.
  std::vector<long> relation;
  /// Number of coefficient vectors covered.
  std::uint64_t searched = 0;
  std::string method;

  std::string verdict_str() const;
  /// True when the relation, substituted, satisfies the tolerance with error bounds.
  bool relation_reproduces() const;
};

/// Exhaustive search over nonzero c with |c_i| <= B for |sum c_i v_i| <= tau.
/// Throws PreconditionError when error bounds exceed tau / (len * B) or a
/// candidate cannot be decided at the given precision.
IndependenceCertificate independence_certificate(const std::vector<std::string>& labels,
                                                 const std::vector<Rho0Value>& values, long bound,
                                                 const Rational& tolerance);

struct FamilyMember {
  infection::BoundaryLink link;
  Expr expr;
  freegroup::FreeWord eta;
  int depth = 0;
  SeifertMatrix knot;
  infection::FiltrationTags tags;
};

/// T(eta_n, K) for each knot, with eta_n the canonical depth-n curve on m
/// strands. Rejects knots with nonzero Arf invariant.
std::vector<FamilyMember> generate_family(infection::Engine& engine, int n, int m,
                                          const std::vector<SeifertMatrix>& knots);

}  // namespace rhokit::families
