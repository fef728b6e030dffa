#include "rhokit/infection.hpp"

#include "rhokit/errors.hpp"

#include <algorithm>
#include <cctype>

namespace rhokit::infection {

namespace {

Expr make(auto kind) { return std::make_shared<const Node>(Node{std::move(kind)}); }

void check_curve(const TrackedGroup& g, const FreeWord& eta) {
  if (eta.is_identity()) throw PreconditionError("infection curve is trivial");
  switch (g.kind) {
    case TrackedGroup::Kind::Opaque:
      throw PreconditionError("base has no tracked free group; curves cannot be placed");
    case TrackedGroup::Kind::Meridian:
      if (eta.rank() != 1) throw PreconditionError("on a knot surgery the only usable curves are powers of the meridian x1");
      break;
    case TrackedGroup::Kind::Free:
      if (eta.rank() != g.rank)
        throw PreconditionError("curve rank " + std::to_string(eta.rank()) + " does not match base rank " +
                                std::to_string(g.rank));
      break;
  }
}

Rational absolute(const Rational& r) { return r < 0 ? Rational(-r) : r; }

bool certified_zero(const Rho0Value& v) { return absolute(v.value) <= v.error_bound; }

}  // namespace

TrackedGroup tracked_group(const Expr& e) {
  return std::visit(
      [](const auto& n) -> TrackedGroup {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, KnotSurgery>) return {TrackedGroup::Kind::Meridian, 1};
        else if constexpr (std::is_same_v<T, TrivialLinkSurgery>) return {TrackedGroup::Kind::Free, n.components};
        else if constexpr (std::is_same_v<T, Infect>) return tracked_group(n.base);
        else if constexpr (std::is_same_v<T, ConnectedSum>) {
          TrackedGroup a = tracked_group(n.left), b = tracked_group(n.right);
          if (a.kind == TrackedGroup::Kind::Free && b.kind == TrackedGroup::Kind::Free)
            return {TrackedGroup::Kind::Free, a.rank + b.rank};
          return {};
        } else return {};
      },
      e->kind);
}

Expr knot_surgery(SeifertMatrix k) { return make(KnotSurgery{std::move(k)}); }

Expr trivial_link(int m) {
  if (m < 1) throw PreconditionError("trivial link needs at least one component");
  return make(TrivialLinkSurgery{m});
}

Expr infect(Expr base, FreeWord eta, SeifertMatrix k, bool bounds_disk) {
  if (!base) throw PreconditionError("missing base expression");
  check_curve(tracked_group(base), eta);
  return make(Infect{std::move(base), std::move(eta), std::move(k), bounds_disk});
}

Expr connected_sum(Expr a, Expr b) {
  if (!a || !b) throw PreconditionError("missing summand");
  return make(ConnectedSum{std::move(a), std::move(b)});
}

Expr stack(std::vector<BoundaryLink> links) {
  if (links.empty()) throw PreconditionError("empty stack");
  for (const auto& l : links) {
    if (l.components != links.front().components)
      throw PreconditionError("stacked string links must have the same number of components");
    for (const auto& [eta, k] : l.infections) check_curve({TrackedGroup::Kind::Free, l.components}, eta);
  }
  return make(BoundaryStack{std::move(links)});
}

RhoVector operator+(const RhoVector& a, const RhoVector& b) {
  RhoVector out;
  const std::size_t n = std::max(a.head.size(), b.head.size());
  for (std::size_t i = 0; i < n; ++i) out.head.push_back(a.at(i) + b.at(i));
  out.tail = a.tail + b.tail;
  return out;
}

bool operator==(const RhoVector& a, const RhoVector& b) {
  const std::size_t n = std::max(a.head.size(), b.head.size());
  for (std::size_t i = 0; i <= n; ++i)
    if (!(a.at(i) == b.at(i))) return false;
  return true;
}

std::string RhoVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < head.size(); ++i) s += (i ? ", " : "") + to_string(head[i].value);
  s += head.empty() ? "tail " : "; tail ";
  return s + to_string(tail.value) + ")";
}

Engine::Engine(EngineOptions options) : options_(std::move(options)) {}

int Engine::curve_depth(const FreeWord& eta) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = depths_.find(eta); it != depths_.end()) return it->second;
  }
  freegroup::DerivedDepth d = freegroup::derived_depth(eta, options_.depth);
  if (d.kind == freegroup::DerivedDepth::Kind::Exceeds) throw DepthOverflow(eta.str(), options_.depth.max_n);
  if (d.kind == freegroup::DerivedDepth::Kind::Identity) throw PreconditionError("infection curve is trivial");
  std::unique_lock lock(mutex_);
  depths_.emplace(eta, d.value);
  return d.value;
}

Rho0Value Engine::knot_rho0(const SeifertMatrix& k) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = knots_.find(k.rows()); it != knots_.end()) return it->second;
  }
  Rho0Value v = seifert::rho0(k, options_.tolerance);
  std::unique_lock lock(mutex_);
  return knots_.emplace(k.rows(), v).first->second;
}

RhoVector Engine::rho_vector(const Expr& e) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second.second;
  }
  RhoVector v = evaluate(e);
  std::unique_lock lock(mutex_);
  return memo_.emplace(e.get(), std::make_pair(e, v)).first->second.second;
}

RhoVector Engine::link_vector(const BoundaryLink& l) {
  RhoVector out;
  for (const auto& [eta, k] : l.infections) {
    RhoVector inc{std::vector<Rho0Value>(curve_depth(eta)), knot_rho0(k)};
    out = out + inc;
  }
  return out;
}

RhoVector Engine::evaluate(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> RhoVector {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, KnotSurgery>) return {{}, knot_rho0(n.knot)};
        else if constexpr (std::is_same_v<T, TrivialLinkSurgery>) return {};
        else if constexpr (std::is_same_v<T, Infect>) {
          if (!n.bounds_disk)
            throw PreconditionError("curve " + n.eta.str() + " is not asserted to bound a disk in S^3");
          RhoVector inc{std::vector<Rho0Value>(curve_depth(n.eta)), knot_rho0(n.knot)};
          return rho_vector(n.base) + inc;
        } else if constexpr (std::is_same_v<T, ConnectedSum>) {
          return rho_vector(n.left) + rho_vector(n.right);
        } else {
          RhoVector out;
          for (const auto& l : n.links) out = out + link_vector(l);
          return out;
        }
      },
      e->kind);
}

int Engine::max_depth(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Infect>) return std::max(max_depth(n.base), curve_depth(n.eta));
        else if constexpr (std::is_same_v<T, ConnectedSum>) return std::max(max_depth(n.left), max_depth(n.right));
        else if constexpr (std::is_same_v<T, BoundaryStack>) {
          int d = 0;
          for (const auto& l : n.links)
            for (const auto& [eta, k] : l.infections) d = std::max(d, curve_depth(eta));
          return d;
        } else return 0;
      },
      e->kind);
}

std::string SliceVerdict::str() const {
  if (!obstructed) return "Inconclusive";
  return "Obstructed(" + std::to_string(index) + ", " + to_string(value.value) + ")";
}

SliceVerdict slice_obstruction(Engine& engine, const Expr& e) {
  RhoVector v = engine.rho_vector(e);
  for (std::size_t n = 0; n <= v.head.size(); ++n)
    if (!certified_zero(v.at(n))) return {true, n, v.at(n)};
  return {};
}

namespace {

using OptLevel = std::optional<Level>;

OptLevel min_level(const OptLevel& a, const OptLevel& b) {
  if (!a || !b) return std::nullopt;
  if (a->unbounded) return b;
  if (b->unbounded) return a;
  return Level{false, std::min(a->value, b->value)};
}

void merge(FiltrationTags& into, FiltrationTags from) {
  into.solvable_degree = min_level(into.solvable_degree, from.solvable_degree);
  into.grope_height = min_level(into.grope_height, from.grope_height);
  for (auto& c : from.certificates) into.certificates.push_back(std::move(c));
}

FiltrationTags unbounded_tags(const std::string& note) {
  return {Level{true, 0}, Level{true, 0}, {note}};
}

std::string knot_label(const SeifertMatrix& k) { return k.name().empty() ? "unnamed knot" : "'" + k.name() + "'"; }

FiltrationTags infection_tags(Engine& engine, const FreeWord& eta, const SeifertMatrix& k) {
  const int d = engine.curve_depth(eta);
  const int a = seifert::arf(k);
  FiltrationTags t;
  t.grope_height = Level{false, d + 1};
  std::string note = "infection along " + eta.str() + " (depth " + std::to_string(d) + ") by " + knot_label(k) +
                     " (arf " + std::to_string(a) + "): grope height " + std::to_string(d + 1);
  if (a == 0) {
    t.solvable_degree = Level{false, d};
    note += ", solvable degree " + std::to_string(d);
  } else if (d + 1 >= 3) {
    t.solvable_degree = Level{false, d - 1};
    note += ", solvable degree " + std::to_string(d - 1) + " from grope height";
  }
  t.certificates.push_back(note + "; curve assumed to bound a disk in S^3");
  return t;
}

FiltrationTags tags_of(Engine& engine, const Expr& e) {
  return std::visit(
      [&](const auto& n) -> FiltrationTags {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, KnotSurgery>) {
          return {std::nullopt, std::nullopt, {"knot surgery on " + knot_label(n.knot) + ": untagged"}};
        } else if constexpr (std::is_same_v<T, TrivialLinkSurgery>) {
          return unbounded_tags("trivial link of " + std::to_string(n.components) + " components: slice");
        } else if constexpr (std::is_same_v<T, Infect>) {
          FiltrationTags t = tags_of(engine, n.base);
          merge(t, infection_tags(engine, n.eta, n.knot));
          return t;
        } else if constexpr (std::is_same_v<T, ConnectedSum>) {
          FiltrationTags t = tags_of(engine, n.left);
          merge(t, tags_of(engine, n.right));
          return t;
        } else {
          FiltrationTags t = unbounded_tags("stack of " + std::to_string(n.links.size()) + " string links");
          for (const auto& l : n.links)
            for (const auto& [eta, k] : l.infections) merge(t, infection_tags(engine, eta, k));
          return t;
        }
      },
      e->kind);
}

}  // namespace

FiltrationTags infer_tags(Engine& engine, const Expr& e) { return tags_of(engine, e); }

bool VanishingReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VanishingCheck& c) { return c.passed; });
}

VanishingReport check_vanishing(Engine& engine, const Expr& e) {
  FiltrationTags tags = infer_tags(engine, e);
  if (!tags.solvable_degree) throw PreconditionError("expression has no solvable degree tag");
  RhoVector v = engine.rho_vector(e);
  VanishingReport report{*tags.solvable_degree, {}};
  const std::size_t count = tags.solvable_degree->unbounded ? v.head.size() + 1
                                                            : static_cast<std::size_t>(tags.solvable_degree->value);
  for (std::size_t k = 0; k < count; ++k) report.checks.push_back({k, v.at(k), certified_zero(v.at(k))});
  return report;
}

namespace {

struct PatternTree {
  std::vector<PatternTree> kids;  // empty for a leaf
};

class PatternParser {
 public:
  explicit PatternParser(const std::string& s) : s_(s) {}

  PatternTree parse() {
    PatternTree t = node();
    skip();
    if (pos_ != s_.size()) fail();
    return t;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) return ++pos_, true;
    return false;
  }
  [[noreturn]] void fail() { throw ParseError("malformed Bing pattern '" + s_ + "'"); }

  PatternTree node() {
    if (eat('*')) return {};
    if (!eat('[')) fail();
    PatternTree t;
    t.kids.push_back(node());
    if (!eat(',')) fail();
    t.kids.push_back(node());
    if (!eat(']')) fail();
    return t;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::string balanced_pattern(int k) { return k == 0 ? "*" : "[" + balanced_pattern(k - 1) + "," + balanced_pattern(k - 1) + "]"; }

int count_leaves(const PatternTree& t) { return t.kids.empty() ? 1 : count_leaves(t.kids[0]) + count_leaves(t.kids[1]); }

FreeWord build_curve(const PatternTree& t, int rank, int& next) {
  if (t.kids.empty()) return FreeWord::generator(rank, next++);
  FreeWord a = build_curve(t.kids[0], rank, next);
  FreeWord b = build_curve(t.kids[1], rank, next);
  return freegroup::commutator(a, b);
}

}  // namespace

BingDouble bing_double(const SeifertMatrix& k, const std::string& pattern) {
  std::string p = pattern;
  if (!p.empty() && std::all_of(p.begin(), p.end(), [](unsigned char c) { return std::isdigit(c); })) {
    if (p.size() > 2 || std::stoi(p) > 6) throw PreconditionError("Bing iteration count too large: " + p);
    p = balanced_pattern(std::stoi(p));
  }
  PatternTree tree = PatternParser(p).parse();
  const int m = count_leaves(tree);
  if (m == 1) return {knot_surgery(k), 1, FreeWord::generator(1, 1), p};
  int next = 1;
  FreeWord eta = build_curve(tree, m, next);
  return {infect(trivial_link(m), eta, k), m, eta, p};
}

}  // namespace rhokit::infection
