#include "doctest.h"

#include "oracles.hpp"
#include "rhokit/errors.hpp"
#include "rhokit/solvable.hpp"

#include <random>

using namespace rhokit;
using namespace rhokit::freegroup;

namespace {

FreeWord W(const char* s, int rank) { return FreeWord::parse(s, rank); }

FreeWord random_word(std::mt19937_64& rng, int rank, std::size_t max_len) {
  std::size_t len = rng() % (max_len + 1);
  std::vector<Letter> ls;
  for (std::size_t i = 0; i < len; ++i)
    ls.push_back({static_cast<int>(rng() % rank) + 1, (rng() & 1) ? 1 : -1});
  return FreeWord(rank, ls);
}

// random element of F^(1): product of commutators of random words
FreeWord random_commutator_word(std::mt19937_64& rng, int rank, std::size_t len) {
  return commutator(random_word(rng, rank, len), random_word(rng, rank, len));
}

GroupRingElement x_minus_one(int rank, int level, int i) {
  return GroupRingElement::from_group(SolvableElement::generator(rank, level, i)) -
         GroupRingElement::integer(rank, level, 1);
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(FreeWord(2, {{1, 1}, {1, -1}}).is_identity());
  CHECK(FreeWord(2, {{1, 1}, {2, 1}, {2, -1}, {1, 1}}) == W("x1^2", 2));
  FreeWord w = W("x1 x2^-1 x1", 2);
  CHECK(free_reduce(2, w.letters()) == w);
  CHECK_THROWS_AS(FreeWord(2, {{3, 1}}), PreconditionError);
  CHECK_THROWS_AS(FreeWord(2, {{0, 1}}), PreconditionError);
}

TEST_CASE("word syntax") {
  CHECK(W("[x1,x2]", 2).str() == "x1^-1 x2^-1 x1 x2");
  CHECK(W("x1 x2^-1 [x1,x2]", 2).length() == 6);
  CHECK(W("[[x1,x2],[x1,x3]]", 3) == commutator(commutator(W("x1", 3), W("x2", 3)), commutator(W("x1", 3), W("x3", 3))));
  CHECK(W("1", 2).is_identity());
  CHECK(W("(x1 x2)^-2", 2) == W("x2^-1 x1^-1 x2^-1 x1^-1", 2));
  CHECK(FreeWord::parse("x3").rank() == 3);
  CHECK_THROWS_AS(FreeWord::parse("[x1 x2]"), ParseError);
  CHECK_THROWS_AS(FreeWord::parse("x"), ParseError);
  CHECK_THROWS_AS(FreeWord::parse("x1 ]"), ParseError);
  CHECK_THROWS_AS(FreeWord::parse("x3", 2), PreconditionError);
}

TEST_CASE("commutators") {
  FreeWord x1 = FreeWord::generator(2, 1), x2 = FreeWord::generator(2, 2);
  CHECK(commutator(x1, x1).is_identity());
  CHECK(commutator(x1, x2).str() == "x1^-1 x2^-1 x1 x2");
  CHECK(commutator(W("x1 x2^3", 2), FreeWord(2)).is_identity());
  CHECK_THROWS_AS(commutator(x1, FreeWord::generator(3, 1)), PreconditionError);
}

TEST_CASE("Fox derivatives over the free group") {
  FreeWord x1 = FreeWord::generator(2, 1);
  CHECK(fox_derivative(x1, 1) == FreeGroupRingElement{{FreeWord(2), 1}});
  CHECK(fox_derivative(x1.inverse(), 1) == FreeGroupRingElement{{x1.inverse(), -1}});
  CHECK(fox_derivative(x1, 2).empty());
  CHECK_THROWS_AS(fox_derivative(x1, 3), PreconditionError);
  auto d = fox_derivative(W("[x1,x2]", 2), 1);
  CHECK(d == FreeGroupRingElement{{W("x1^-1", 2), -1}, {W("x1^-1 x2^-1", 2), 1}});
}

TEST_CASE("Fox derivative of [x1,x2] in the abelianized group ring") {
  // with commuting s = x1, t = x2: s^-1 t^-1 - s^-1
  GroupRingElement d = fox_derivative(W("[x1,x2]", 2), 1, 1);
  GroupRingElement expected = GroupRingElement::from_group(project_to_solvable(W("x1^-1", 2), 1), -1) +
                              GroupRingElement::from_group(project_to_solvable(W("x1^-1 x2^-1", 2), 1), 1);
  CHECK(d == expected);
  // cross-check with the Laurent oracle
  auto lp = oracle::abelian_fox(W("[x1,x2]", 2).signed_letters(), 2);
  CHECK(lp[0] == oracle::Laurent{{{-1, 0}, -1}, {{-1, -1}, 1}});
}

TEST_CASE("projection to solvable quotients") {
  FreeWord x1 = FreeWord::generator(3, 1);
  CHECK(project_to_solvable(W("x1 x2 x3", 3), 0).is_identity());
  SolvableElement a = project_to_solvable(x1, 1);
  // level 1 is the abelianization: fox coordinates are exponent sums
  REQUIRE(a.fox().size() == 3);
  CHECK(a.fox()[0] == GroupRingElement::integer(3, 0, 1));
  CHECK(a.fox()[1].is_zero());
  CHECK(project_to_solvable(W("[x1,x2]", 2), 1).is_identity());
  CHECK_FALSE(project_to_solvable(W("[x1,x2]", 2), 2).is_identity());
}

TEST_CASE("derived depth") {
  CHECK(derived_depth(W("x1", 2)) == DerivedDepth{DerivedDepth::Kind::Finite, 0});
  CHECK(derived_depth(W("[x1,x2]", 2)).value == 1);
  CHECK(derived_depth(W("[[x1,x2],[x1,x3]]", 3)).value == 2);
  CHECK(derived_depth(W("[x1,[x2,x3]]", 3)).value == 1);
  CHECK(derived_depth(FreeWord(2)).kind == DerivedDepth::Kind::Identity);
  DerivedDepth over = derived_depth(W("[[x1,x2],[x1,x3]]", 3), {.max_n = 1});
  CHECK(over.kind == DerivedDepth::Kind::Exceeds);
  CHECK(over.str() == ">1");
  CHECK_THROWS_AS(derived_depth(W("x1^70", 1)), PreconditionError);
}

TEST_CASE("canonical curves have the advertised depth") {
  for (int m : {2, 3, 4}) {
    for (int n = 0; n <= 3; ++n) {
      FreeWord eta = canonical_curve(n, m);
      CHECK(eta.length() <= (1u << (2 * n)));
      DerivedDepth d = derived_depth(eta, {.max_n = 3});
      CHECK(d.finite());
      CHECK(d.value == n);
    }
  }
  CHECK(canonical_curve(2, 3) == W("[[x1,x2],[x1,x3]]", 3));
  CHECK_THROWS_AS(canonical_curve(1, 1), PreconditionError);
}

TEST_CASE("homomorphism property of the Magnus normal form") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    int rank = 2 + static_cast<int>(rng() % 2);
    int n = static_cast<int>(rng() % 4);
    FreeWord u = random_word(rng, rank, 8), v = random_word(rng, rank, 8);
    CHECK(project_to_solvable(u * v, n) == project_to_solvable(u, n) * project_to_solvable(v, n));
  }
}

TEST_CASE("inverses and the multiplication law") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    FreeWord u = random_word(rng, 3, 10);
    for (int n = 0; n <= 3; ++n) {
      SolvableElement e = project_to_solvable(u, n);
      CHECK(e.inverse() == project_to_solvable(u.inverse(), n));
      CHECK((e * e.inverse()).is_identity());
    }
  }
}

TEST_CASE("fundamental Fox identity") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    int rank = 2 + static_cast<int>(rng() % 2);
    FreeWord w = random_word(rng, rank, 12);
    for (int n = 0; n <= 2; ++n) {
      GroupRingElement lhs(rank, n);
      for (int i = 1; i <= rank; ++i) lhs = lhs + fox_derivative(w, i, n) * x_minus_one(rank, n, i);
      GroupRingElement rhs = GroupRingElement::from_group(project_to_solvable(w, n)) -
                             GroupRingElement::integer(rank, n, 1);
      CHECK(lhs == rhs);
      // the unevaluated derivative specializes to the same element
      CHECK(evaluate(fox_derivative(w, 1), rank, n) == fox_derivative(w, 1, n));
    }
  }
}

TEST_CASE("group ring axioms on samples") {
  std::mt19937_64 rng(13);
  auto sample = [&](int level) {
    GroupRingElement r(2, level);
    for (int k = 0; k < 3; ++k)
      r.add_term(project_to_solvable(random_word(rng, 2, 6), level), static_cast<std::int64_t>(rng() % 5) - 2);
    return r;
  };
  for (int trial = 0; trial < 30; ++trial) {
    int level = 1 + trial % 2;
    auto a = sample(level), b = sample(level), c = sample(level);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    if (!a.is_zero() && !b.is_zero()) CHECK_FALSE((a * b).is_zero());
  }
}

TEST_CASE("F^(2) membership agrees with the commutative Laurent oracle") {
  std::mt19937_64 rng(2718);
  int members = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int rank = 2 + static_cast<int>(rng() % 2);
    FreeWord w;
    switch (trial % 3) {
      case 0: w = random_word(rng, rank, 12); break;
      case 1: w = random_commutator_word(rng, rank, 3); break;
      default: w = commutator(random_commutator_word(rng, rank, 1), random_commutator_word(rng, rank, 1)); break;
    }
    if (w.length() > 12) w = FreeWord(rank, std::vector<Letter>(w.letters().begin(), w.letters().begin() + 12));
    bool ours = project_to_solvable(w, 2).is_identity();
    CHECK(ours == oracle::in_second_derived(w.signed_letters(), rank));
    members += ours;
  }
  CHECK(members > 0);
}

TEST_CASE("commutators deepen the filtration") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    int rank = 3;
    FreeWord a = trial % 2 ? random_word(rng, rank, 4) : random_commutator_word(rng, rank, 2);
    FreeWord b = trial % 3 ? random_commutator_word(rng, rank, 2) : random_word(rng, rank, 4);
    DerivedDepth da = derived_depth(a, {.max_n = 3}), db = derived_depth(b, {.max_n = 3});
    if (!da.finite() || !db.finite()) continue;
    int n = std::min(da.value, db.value);
    if (n > 1) continue;
    FreeWord c = commutator(a, b);
    DerivedDepth dc = derived_depth(c, {.max_n = 3, .max_word_length = 256});
    if (dc.kind == DerivedDepth::Kind::Finite) CHECK(dc.value >= n + 1);
  }
}

TEST_CASE("derived depth is conjugation invariant") {
  std::mt19937_64 rng(31);
  const FreeWord samples[] = {W("x1 x2", 3), W("[x1,x2]", 3), W("[x1,[x2,x3]]", 3), W("[[x1,x2],[x1,x3]]", 3)};
  for (const auto& w : samples) {
    DerivedDepth d = derived_depth(w, {.max_n = 3});
    for (int k = 0; k < 5; ++k) {
      FreeWord g = random_word(rng, 3, 4);
      CHECK(derived_depth(w.conjugate(g), {.max_n = 3, .max_word_length = 128}) == d);
    }
  }
}
