#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rhokit::freegroup {

/// x_gen^exp with gen in 1..rank and exp = +-1.
struct Letter {
  int gen = 1;
  int exp = 1;
  Letter inverse() const { return {gen, -exp}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the free group of a fixed rank.
class FreeWord {
 public:
  FreeWord() = default;
  /// Identity of the given rank.
  explicit FreeWord(int rank);
  /// Reduces `letters`; throws PreconditionError on a bad rank, generator or exponent.
  FreeWord(int rank, const std::vector<Letter>& letters);

  static FreeWord generator(int rank, int gen, int exp = 1);
  /// Parses "x1 x2^-1 [x1,x2]" with nested commutator brackets, integer
  /// exponents on any factor, and "1" for the identity. When rank is omitted
  /// it is the largest generator index used (at least 1). Throws ParseError.
  static FreeWord parse(std::string_view text, std::optional<int> rank = std::nullopt);

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  FreeWord inverse() const;
  /// g^-1 w g
  FreeWord conjugate(const FreeWord& g) const;
  FreeWord pow(long k) const;
  /// Signed 1-based letter list, e.g. x1 x2^-1 -> {1, -2}.
  std::vector<int> signed_letters() const;
  /// Exponent sum of each generator.
  std::vector<long> exponent_sums() const;
  /// Canonical text form: "x1^-1 x2^-1 x1 x2", identity "1".
  std::string str() const;

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord& a, const FreeWord& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  int rank_ = 1;
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
FreeWord free_reduce(int rank, const std::vector<Letter>& letters);

/// u^-1 v^-1 u v, reduced. Throws PreconditionError on a rank mismatch.
FreeWord commutator(const FreeWord& u, const FreeWord& v);

/// Element of the integral group ring of the free group, as word -> coefficient.
using FreeGroupRingElement = std::map<FreeWord, long>;

/// Fox derivative d w / d x_i with d(uv) = du + u dv, d x_j = delta_ij,
/// d x_j^-1 = -delta_ij x_j^-1.
FreeGroupRingElement fox_derivative(const FreeWord& w, int i);

/// Canonical curve of derived depth n in the free group of rank m >= 2 (m >= 1 for n = 0):
/// x1 for n = 0, [x1, x2] for n = 1, and for n >= 2 the commutator of the
/// depth n-1 curve with an image of itself under a letter substitution
/// ([x1,x2] -> [x1,x3] at the first step when m >= 3; otherwise inverting x1 at
/// odd steps and x2 at even steps). Word length is at most 4^n.
FreeWord canonical_curve(int n, int m);

/// Replaces every occurrence of generator `gen` by `image` (and its inverse).
FreeWord substitute(const FreeWord& w, int gen, const FreeWord& image);

}  // namespace rhokit::freegroup
