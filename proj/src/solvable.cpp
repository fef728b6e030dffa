#include "rhokit/solvable.hpp"

#include "rhokit/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace rhokit::freegroup {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("group ring coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("group ring coefficient overflow");
  return r;
}

}  // namespace

// ---- SolvableElement ----

SolvableElement SolvableElement::identity(int rank, int level) {
  if (rank < 1) throw PreconditionError("free group rank must be at least 1");
  if (level < 0) throw PreconditionError("solvable level must be nonnegative");
  SolvableElement e;
  e.rank_ = rank;
  e.level_ = level;
  if (level > 0) {
    e.shadow_.push_back(identity(rank, level - 1));
    e.fox_.assign(static_cast<std::size_t>(rank), GroupRingElement(rank, level - 1));
  }
  return e;
}

SolvableElement SolvableElement::generator(int rank, int level, int gen, int exp) {
  SolvableElement e = identity(rank, level);
  if (gen < 1 || gen > rank) throw PreconditionError("generator index out of range");
  e.multiply_letter({gen, exp});
  return e;
}

bool SolvableElement::is_identity() const {
  if (level_ == 0) return true;
  for (const auto& f : fox_)
    if (!f.is_zero()) return false;
  return shadow().is_identity();
}

void SolvableElement::multiply_letter(const Letter& l) {
  if (level_ == 0) return;
  auto& f = fox_[static_cast<std::size_t>(l.gen - 1)];
  if (l.exp > 0) {
    f.add_term(shadow_.front(), 1);
    shadow_.front().multiply_letter(l);
  } else {
    shadow_.front().multiply_letter(l);
    f.add_term(shadow_.front(), -1);
  }
}

SolvableElement SolvableElement::inverse() const {
  if (level_ == 0) return *this;
  SolvableElement r;
  r.rank_ = rank_;
  r.level_ = level_;
  r.shadow_.push_back(shadow().inverse());
  for (const auto& a : fox_) r.fox_.push_back(-a.left_translate(r.shadow_.front()));
  return r;
}

SolvableElement operator*(const SolvableElement& a, const SolvableElement& b) {
  if (a.rank_ != b.rank_ || a.level_ != b.level_) throw PreconditionError("solvable element mismatch");
  if (a.level_ == 0) return a;
  SolvableElement r;
  r.rank_ = a.rank_;
  r.level_ = a.level_;
  r.shadow_.push_back(a.shadow() * b.shadow());
  for (std::size_t i = 0; i < a.fox_.size(); ++i) r.fox_.push_back(a.fox_[i] + b.fox_[i].left_translate(a.shadow()));
  return r;
}

int SolvableElement::compare(const SolvableElement& a, const SolvableElement& b) {
  if (a.level_ != b.level_) return a.level_ < b.level_ ? -1 : 1;
  if (a.rank_ != b.rank_) return a.rank_ < b.rank_ ? -1 : 1;
  if (a.level_ == 0) return 0;
  if (int c = compare(a.shadow(), b.shadow()); c != 0) return c;
  for (std::size_t i = 0; i < a.fox_.size(); ++i)
    if (int c = GroupRingElement::compare(a.fox_[i], b.fox_[i]); c != 0) return c;
  return 0;
}

std::size_t SolvableElement::complexity() const {
  if (level_ == 0) return 0;
  std::size_t n = shadow().complexity();
  for (const auto& f : fox_)
    for (const auto& [g, c] : f.terms()) n += 1 + g.complexity();
  return n;
}

// ---- GroupRingElement ----

GroupRingElement GroupRingElement::from_group(const SolvableElement& g, std::int64_t c) {
  GroupRingElement r(g.rank(), g.level());
  r.add_term(g, c);
  return r;
}

GroupRingElement GroupRingElement::integer(int rank, int level, std::int64_t c) {
  return from_group(SolvableElement::identity(rank, level), c);
}

void GroupRingElement::add_term(const SolvableElement& g, std::int64_t c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                             [](const Term& t, const SolvableElement& key) { return t.first < key; });
  if (it != terms_.end() && it->first == g) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {g, c});
  }
}

void GroupRingElement::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  std::vector<Term> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) merged.back().second = checked_add(merged.back().second, t.second);
    else merged.push_back(std::move(t));
    if (merged.back().second == 0) merged.pop_back();
  }
  terms_ = std::move(merged);
}

GroupRingElement GroupRingElement::left_translate(const SolvableElement& g) const {
  GroupRingElement r(rank_, level_);
  r.terms_.reserve(terms_.size());
  for (const auto& [k, c] : terms_) r.terms_.emplace_back(g * k, c);
  r.normalize();
  return r;
}

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement r(a.rank_, a.level_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    int c = i == a.terms_.end() ? 1 : j == b.terms_.end() ? -1 : SolvableElement::compare(i->first, j->first);
    if (c < 0) r.terms_.push_back(*i++);
    else if (c > 0) r.terms_.push_back(*j++);
    else {
      std::int64_t s = checked_add(i->second, j->second);
      if (s != 0) r.terms_.emplace_back(i->first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

GroupRingElement operator-(const GroupRingElement& a) {
  GroupRingElement r = a;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) { return a + (-b); }

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement r(a.rank_, a.level_);
  for (const auto& [g, c] : a.terms_)
    for (const auto& [h, d] : b.terms_) r.terms_.emplace_back(g * h, checked_mul(c, d));
  r.normalize();
  return r;
}

int GroupRingElement::compare(const GroupRingElement& a, const GroupRingElement& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (int c = SolvableElement::compare(a.terms_[k].first, b.terms_[k].first); c != 0) return c;
    if (a.terms_[k].second != b.terms_[k].second) return a.terms_[k].second < b.terms_[k].second ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

// ---- free functions ----

SolvableElement project_to_solvable(const FreeWord& w, int n) {
  SolvableElement e = SolvableElement::identity(w.rank(), n);
  for (const auto& l : w.letters()) e.multiply_letter(l);
  return e;
}

GroupRingElement fox_derivative(const FreeWord& w, int i, int n) {
  if (i < 1 || i > w.rank()) throw PreconditionError("Fox derivative index out of range");
  return project_to_solvable(w, n + 1).fox()[static_cast<std::size_t>(i - 1)];
}

GroupRingElement evaluate(const FreeGroupRingElement& x, int rank, int n) {
  GroupRingElement r(rank, n);
  for (const auto& [w, c] : x) r.add_term(project_to_solvable(w, n), c);
  return r;
}

std::string DerivedDepth::str() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(value);
    case Kind::Identity: return "identity";
    case Kind::Exceeds: return ">" + std::to_string(value);
  }
  return {};
}

DerivedDepth derived_depth(const FreeWord& w, const DepthLimits& limits) {
  if (w.is_identity()) return {DerivedDepth::Kind::Identity, 0};
  if (w.length() > limits.max_word_length)
    throw PreconditionError("word length " + std::to_string(w.length()) + " exceeds the configured limit " +
                            std::to_string(limits.max_word_length));
  for (int n = 0; n <= limits.max_n; ++n)
    if (!project_to_solvable(w, n + 1).is_identity()) return {DerivedDepth::Kind::Finite, n};
  return {DerivedDepth::Kind::Exceeds, limits.max_n};
}

}  // namespace rhokit::freegroup
