#pragma once

// Normal forms for the free solvable quotients F/F^(n) via the iterated
// Magnus embedding: an element of F/F^(n) is a pair (shadow, fox) where the
// shadow is its image in F/F^(n-1) and fox_i is the i-th Fox derivative pushed
// into Z[F/F^(n-1)]. Multiplication is (s, a)(t, b) = (st, a + s.b).

#include "rhokit/freegroup.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rhokit::freegroup {

class GroupRingElement;

/// Element of F/F^(level) for the free group of rank `rank`.
class SolvableElement {
 public:
  SolvableElement() = default;
  static SolvableElement identity(int rank, int level);
  static SolvableElement generator(int rank, int level, int gen, int exp = 1);

  int rank() const { return rank_; }
  int level() const { return level_; }
  bool is_identity() const;

  /// Image in F/F^(level-1). Requires level >= 1.
  const SolvableElement& shadow() const { return shadow_.front(); }
  /// Fox coordinates in Z[F/F^(level-1)], one per generator. Empty at level 0.
  const std::vector<GroupRingElement>& fox() const { return fox_; }

  /// Right multiplication by a single letter, in place.
  void multiply_letter(const Letter& l);

  SolvableElement inverse() const;
  friend SolvableElement operator*(const SolvableElement& a, const SolvableElement& b);
  friend bool operator==(const SolvableElement& a, const SolvableElement& b) { return compare(a, b) == 0; }
  friend bool operator<(const SolvableElement& a, const SolvableElement& b) { return compare(a, b) < 0; }

  /// Total order: level, then shadow, then fox vectors lexicographically.
  static int compare(const SolvableElement& a, const SolvableElement& b);

  /// Rough size measure (number of stored group-ring terms, recursively).
  std::size_t complexity() const;

 private:
  int rank_ = 1;
  int level_ = 0;
  std::vector<SolvableElement> shadow_;  // one entry when level >= 1
  std::vector<GroupRingElement> fox_;
};

/// Finite integer combination of elements of F/F^(level), sorted by the
/// SolvableElement order with no zero coefficients.
class GroupRingElement {
 public:
  using Term = std::pair<SolvableElement, std::int64_t>;

  GroupRingElement() = default;
  GroupRingElement(int rank, int level) : rank_(rank), level_(level) {}
  static GroupRingElement from_group(const SolvableElement& g, std::int64_t c = 1);
  static GroupRingElement integer(int rank, int level, std::int64_t c);

  int rank() const { return rank_; }
  int level() const { return level_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * g.
  void add_term(const SolvableElement& g, std::int64_t c);
  /// g * this
  GroupRingElement left_translate(const SolvableElement& g) const;

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator-(const GroupRingElement& a);
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) { return compare(a, b) == 0; }

  static int compare(const GroupRingElement& a, const GroupRingElement& b);

 private:
  void normalize();
  int rank_ = 1;
  int level_ = 0;
  std::vector<Term> terms_;
};

/// Image of w in F/F^(n). Identity iff w lies in F^(n).
SolvableElement project_to_solvable(const FreeWord& w, int n);

/// Fox derivative d w / d x_i pushed into Z[F/F^(n)].
GroupRingElement fox_derivative(const FreeWord& w, int i, int n);

/// Pushes a free group ring element into Z[F/F^(n)].
GroupRingElement evaluate(const FreeGroupRingElement& x, int rank, int n);

/// Result of a derived-depth query.
struct DerivedDepth {
  enum class Kind { Finite, Identity, Exceeds };
  Kind kind = Kind::Finite;
  /// Depth when Finite; the bound max_n when Exceeds.
  int value = 0;

  bool finite() const { return kind == Kind::Finite; }
  std::string str() const;
  friend bool operator==(const DerivedDepth&, const DerivedDepth&) = default;
};

struct DepthLimits {
  int max_n = 4;
  std::size_t max_word_length = 64;
};

/// The unique n <= max_n with w in F^(n) - F^(n+1). The identity reports
/// Kind::Identity; words in F^(max_n + 1) report Kind::Exceeds. Throws
/// PreconditionError when w is longer than the configured limit.
DerivedDepth derived_depth(const FreeWord& w, const DepthLimits& limits = {});

}  // namespace rhokit::freegroup
