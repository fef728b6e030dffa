#pragma once
// Symbolic 3-manifold expressions built from zero surgeries and infections,
// with a rule engine for the higher-order rho invariants.

#include "rhokit/seifert.hpp"
#include "rhokit/solvable.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

namespace rhokit::infection {

using freegroup::FreeWord;
using seifert::Rho0Value;
using seifert::SeifertMatrix;

struct Node;
using Expr = std::shared_ptr<const Node>;

/// Zero surgery on a knot.
struct KnotSurgery {
  SeifertMatrix knot;
};

/// Zero surgery on the m-component trivial link.
struct TrivialLinkSurgery {
  int components = 1;
};

/// Replace a neighbourhood of the curve eta in base by the exterior of knot.
struct Infect {
  Expr base;
  FreeWord eta;
  SeifertMatrix knot;
  /// Caller assertion that eta bounds a disk in S^3.
  bool bounds_disk = true;
};

struct ConnectedSum {
  Expr left;
  Expr right;
};

/// Trivial m-component string link infected along (eta, knot) pairs.
struct BoundaryLink {
  int components = 1;
  std::vector<std::pair<FreeWord, SeifertMatrix>> infections;
};

/// Closure of a product of boundary string links.
struct BoundaryStack {
  std::vector<BoundaryLink> links;
};

struct Node {
  std::variant<KnotSurgery, TrivialLinkSurgery, Infect, ConnectedSum, BoundaryStack> kind;
};

/// Fundamental group tracked by the engine.
struct TrackedGroup {
  enum class Kind {
    Free,      // free of rank `rank`
    Meridian,  // knot surgery; only powers of the meridian x1 are usable curves
    Opaque,    // no further infections allowed
  };
  Kind kind = Kind::Opaque;
  int rank = 0;
};

TrackedGroup tracked_group(const Expr& e);

Expr knot_surgery(SeifertMatrix k);
Expr trivial_link(int m);
/// Throws PreconditionError when eta is trivial or does not live in the
/// tracked group of base.
Expr infect(Expr base, FreeWord eta, SeifertMatrix k, bool bounds_disk = true);
Expr connected_sum(Expr a, Expr b);
/// All links must share the same component count and carry nontrivial curves.
Expr stack(std::vector<BoundaryLink> links);

/// Values rho_0, ..., rho_{N-1} followed by a constant tail.
struct RhoVector {
  std::vector<Rho0Value> head;
  Rho0Value tail;

  const Rho0Value& at(std::size_t n) const { return n < head.size() ? head[n] : tail; }
  /// Entrywise sum.
  friend RhoVector operator+(const RhoVector& a, const RhoVector& b);
  /// Equal as sequences; head lengths may differ.
  friend bool operator==(const RhoVector& a, const RhoVector& b);
  /// "(0, 0; tail -8/3)"
  std::string str() const;
};

struct EngineOptions {
  Rational tolerance{1, 1000000000000LL};
  freegroup::DepthLimits depth;
};

/// Memoizing evaluator. Safe to share between threads.
class Engine {
 public:
  explicit Engine(EngineOptions options = {});

  const EngineOptions& options() const { return options_; }
  RhoVector rho_vector(const Expr& e);
  Rho0Value rho(const Expr& e, std::size_t n) { return rho_vector(e).at(n); }
  /// Throws DepthOverflow or PreconditionError when the depth is not a finite value.
  int curve_depth(const FreeWord& eta);
  Rho0Value knot_rho0(const SeifertMatrix& k);
  /// Largest curve depth occurring in the expression.
  int max_depth(const Expr& e);

 private:
  RhoVector evaluate(const Expr& e);
  RhoVector link_vector(const BoundaryLink& l);

  EngineOptions options_;
  std::shared_mutex mutex_;
  std::map<const Node*, std::pair<Expr, RhoVector>> memo_;
  std::map<FreeWord, int> depths_;
  std::map<std::vector<std::vector<std::int64_t>>, Rho0Value> knots_;
};

struct SliceVerdict {
  bool obstructed = false;
  std::size_t index = 0;
  Rho0Value value;
  std::string str() const;
};

/// First order whose rho value is certifiably nonzero. Never asserts sliceness.
SliceVerdict slice_obstruction(Engine& engine, const Expr& e);

/// Filtration level: either a finite integer or unbounded.
struct Level {
  bool unbounded = false;
  int value = 0;
  friend bool operator==(const Level&, const Level&) = default;
  std::string str() const { return unbounded ? "unbounded" : std::to_string(value); }
};

struct FiltrationTags {
  std::optional<Level> solvable_degree;
  std::optional<Level> grope_height;
  std::vector<std::string> certificates;
};

FiltrationTags infer_tags(Engine& engine, const Expr& e);

struct VanishingCheck {
  std::size_t index = 0;
  Rho0Value value;
  bool passed = false;
};

struct VanishingReport {
  Level solvable_degree;
  std::vector<VanishingCheck> checks;
  bool passed() const;
};

/// Confirms rho_{k-1} = 0 for k up to the tagged solvable degree. A failing
/// check indicates an engine bug. Throws PreconditionError without a tag.
VanishingReport check_vanishing(Engine& engine, const Expr& e);

/// An iterated Bing double, realized as an infection of a trivial link.
struct BingDouble {
  Expr expr;
  int components = 1;
  FreeWord eta;
  std::string pattern;
};

/// Pattern syntax: "*" for the knot itself, "[A,B]" for a Bing doubling of the
/// leaves in A and B, or a nonnegative integer k for the balanced k-fold
/// iteration. Leaves become distinct meridians x1, x2, ... left to right.
BingDouble bing_double(const SeifertMatrix& k, const std::string& pattern);

}  // namespace rhokit::infection
