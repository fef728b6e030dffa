#include "rhokit/families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace rhokit::families {

namespace {

Rational absolute(const Rational& r) { return r < 0 ? Rational(-r) : r; }

long labs_(long x) { return x < 0 ? -x : x; }

}  // namespace

KnotLibrary KnotLibrary::standard() {
  KnotLibrary lib;
  lib.add("trefoil", seifert::registry_knot("trefoil"));
  lib.add("figure8", seifert::registry_knot("figure8"));
  for (int k = -8; k <= 4; ++k) {
    if (k == 0 || k == -1) continue;
    std::string name = "twist(" + std::to_string(k) + ")";
    lib.add(name, seifert::registry_knot(name));
  }
  return lib;
}

const LibraryEntry& KnotLibrary::add(std::string name, SeifertMatrix matrix) {
  if (find(name)) throw PreconditionError("duplicate library entry '" + name + "'");
  matrix.set_name(name);
  Rho0Value v = seifert::rho0(matrix, tolerance_);
  int a = seifert::arf(matrix);
  entries_.push_back({std::move(name), std::move(matrix), std::move(v), a});
  return entries_.back();
}

const LibraryEntry* KnotLibrary::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

dsl::KnotResolver KnotLibrary::resolver() const {
  std::map<std::string, SeifertMatrix> table;
  for (const auto& e : entries_) table.emplace(e.name, e.matrix);
  return [table = std::move(table)](const std::string& name) -> std::optional<SeifertMatrix> {
    if (auto it = table.find(name); it != table.end()) return it->second;
    return std::nullopt;
  };
}

bool KnotLibrary::verify() const {
  return std::all_of(entries_.begin(), entries_.end(), [&](const LibraryEntry& e) {
    return seifert::rho0(e.matrix, tolerance_) == e.rho0 && seifert::arf(e.matrix) == e.arf;
  });
}

Approximation approximate_target(const Rational& r, const Rational& eps, const KnotLibrary& lib,
                                 const ApproximationOptions& options) {
  if (eps <= 0) throw PreconditionError("epsilon must be positive");
  if (options.budget < 0) throw PreconditionError("budget must be nonnegative");
  std::vector<const LibraryEntry*> usable;
  for (const auto& e : lib.entries())
    if (absolute(e.rho0.value) > e.rho0.error_bound) usable.push_back(&e);
  if (usable.empty() && r != 0) throw PreconditionError("library has no knot with certified nonzero rho0");

  Approximation out;
  out.target = r;
  out.epsilon = eps;
  const Rational ar = absolute(r);
  if (ar >= 2) {
    BigInt whole = boost::multiprecision::numerator(ar) / boost::multiprecision::denominator(ar);
    out.scale = static_cast<long>(whole / 2) + 1;
  }
  const Rational goal = r / out.scale, slack = eps / out.scale;
  const double goal_d = to_double(goal), slack_d = to_double(slack);

  const std::size_t k = usable.size();
  std::vector<double> approx(k);
  for (std::size_t i = 0; i < k; ++i) approx[i] = to_double(usable[i]->rho0.value);

  std::vector<long> c(k, 0), best_c;
  std::optional<Rational> best_hit;
  double best_any = std::abs(goal_d);
  bool found = false;

  auto consider = [&] {
    double s = 0;
    for (std::size_t i = 0; i < k; ++i) s += c[i] * approx[i];
    const double miss = std::abs(s - goal_d);
    best_any = std::min(best_any, miss);
    if (miss > slack_d * 1.01 + 1e-12) return;
    Rational sum = 0, bound = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (c[i] == 0) continue;
      sum += usable[i]->rho0.value * c[i];
      bound += usable[i]->rho0.error_bound * labs_(c[i]);
    }
    Rational dist = absolute(sum - goal) + bound;
    if (dist < slack && (!best_hit || dist < *best_hit)) {
      best_hit = dist;
      best_c = c;
      found = true;
    }
  };

  // all vectors with sum |c_i| == total, in a fixed order
  std::function<void(std::size_t, int)> enumerate = [&](std::size_t i, int left) {
    if (i == k) {
      if (left == 0) consider();
      return;
    }
    if (i + 1 == k) {
      for (int v : {left, -left}) {
        c[i] = v;
        consider();
        if (left == 0) break;
      }
      c[i] = 0;
      return;
    }
    for (int a = 0; a <= left; ++a) {
      for (int v : {a, -a}) {
        c[i] = v;
        enumerate(i + 1, left - a);
        if (a == 0) break;
      }
    }
    c[i] = 0;
  };

  if (absolute(goal) < slack) {
    found = true;
    best_c.assign(k, 0);
  }
  for (int total = 1; total <= options.budget && !found; ++total) enumerate(0, total);
  if (!found)
    throw TargetUnreachable("no combination with coefficient budget " + std::to_string(options.budget) +
                                " reaches the target; best distance about " + std::to_string(best_any * out.scale),
                            from_double(best_any * out.scale));

  SeifertMatrix realized({}, "unknot");
  Rho0Value predicted;
  for (std::size_t i = 0; i < k; ++i) {
    if (best_c[i] == 0) continue;
    long coeff = best_c[i] * out.scale;
    out.terms.emplace_back(usable[i]->name, coeff);
    predicted = predicted + coeff * usable[i]->rho0;
    realized = seifert::connected_sum(realized, seifert::multiple(usable[i]->matrix, coeff));
  }
  out.predicted = predicted;
  out.realized = realized;
  out.recomputed = seifert::rho0(realized, lib.tolerance());
  out.distance_bound = absolute(out.recomputed.value - r) + out.recomputed.error_bound;
  if (!(out.distance_bound < eps)) throw std::logic_error("round trip of realized combination missed the target");
  return out;
}

std::string IndependenceCertificate::verdict_str() const {
  if (verdict == Verdict::RelationFound) {
    std::string s = "RelationFound([";
    for (std::size_t i = 0; i < relation.size(); ++i) s += (i ? "," : "") + std::to_string(relation[i]);
    return s + "])";
  }
  return "NoRelationUpTo(" + std::to_string(bound) + ", " + to_string(tolerance) + ")";
}

bool IndependenceCertificate::relation_reproduces() const {
  if (verdict != Verdict::RelationFound || relation.size() != values.size()) return false;
  Rational sum = 0, err = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i].value * relation[i];
    err += values[i].error_bound * labs_(relation[i]);
  }
  return absolute(sum) + err <= tolerance;
}

IndependenceCertificate independence_certificate(const std::vector<std::string>& labels,
                                                 const std::vector<Rho0Value>& values, long bound,
                                                 const Rational& tolerance) {
  const std::size_t k = values.size();
  if (k == 0) throw PreconditionError("no values");
  if (labels.size() != k) throw PreconditionError("labels and values differ in length");
  if (bound < 1) throw PreconditionError("coefficient bound must be at least 1");
  if (tolerance <= 0) throw PreconditionError("tolerance must be positive");
  const Rational allowed = tolerance / (static_cast<long>(k) * bound);
  for (std::size_t i = 0; i < k; ++i)
    if (!(values[i].error_bound < allowed))
      throw PreconditionError("error bound of '" + labels[i] + "' exceeds tolerance/(len*B); refine rho0");

  const std::size_t h = (k + 1) / 2;
  const long width = 2 * bound + 1;
  double half_size = std::pow(static_cast<double>(width), static_cast<double>(h));
  if (half_size > 2e7) throw PreconditionError("search space too large for exhaustive search");

  Rational total_err = 0;
  double scale = 1;
  std::vector<double> approx(k);
  for (std::size_t i = 0; i < k; ++i) {
    total_err += values[i].error_bound * bound;
    approx[i] = to_double(values[i].value);
    scale += bound * std::abs(approx[i]);
  }
  const double window = to_double(tolerance + total_err) + 1e-9 * scale;

  auto decode = [&](std::uint64_t code, std::size_t len, long* out) {
    for (std::size_t i = 0; i < len; ++i) {
      out[i] = static_cast<long>(code % width) - bound;
      code /= width;
    }
  };
  auto enumerate_half = [&](std::size_t offset, std::size_t len) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= width;
    std::vector<std::pair<double, std::uint64_t>> sums(count);
    std::vector<long> c(len);
    for (std::uint64_t code = 0; code < count; ++code) {
      decode(code, len, c.data());
      double s = 0;
      for (std::size_t i = 0; i < len; ++i) s += c[i] * approx[offset + i];
      sums[code] = {s, code};
    }
    return sums;
  };

  auto left = enumerate_half(0, h);
  auto right = enumerate_half(h, k - h);
  std::sort(left.begin(), left.end());

  IndependenceCertificate cert;
  cert.labels = labels;
  cert.values = values;
  cert.bound = bound;
  cert.tolerance = tolerance;
  cert.searched = static_cast<std::uint64_t>(left.size()) * right.size() - 1;
  cert.method =
      "meet-in-the-middle over all nonzero vectors with |c_i| <= B; double-precision window with margin, "
      "exact rational verification of every candidate";

  std::optional<std::vector<long>> best;
  long best_l1 = 0;
  bool ambiguous = false;
  std::uint64_t candidates = 0;
  std::vector<long> c(k);
  for (const auto& [rs, rcode] : right) {
    auto lo = std::lower_bound(left.begin(), left.end(), std::make_pair(-rs - window, std::uint64_t{0}));
    for (auto it = lo; it != left.end() && it->first <= -rs + window; ++it) {
      if (++candidates > 10000000) throw PreconditionError("too many near-relations; tolerance too coarse");
      decode(it->second, h, c.data());
      decode(rcode, k - h, c.data() + h);
      if (std::all_of(c.begin(), c.end(), [](long x) { return x == 0; })) continue;
      Rational sum = 0, err = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (c[i] == 0) continue;
        sum += values[i].value * c[i];
        err += values[i].error_bound * labs_(c[i]);
      }
      const Rational a = absolute(sum);
      if (a + err <= tolerance) {
        std::vector<long> rel = c;
        auto first = std::find_if(rel.begin(), rel.end(), [](long x) { return x != 0; });
        if (*first < 0)
          for (auto& x : rel) x = -x;
        long l1 = 0;
        for (long x : rel) l1 += labs_(x);
        if (!best || l1 < best_l1 || (l1 == best_l1 && rel < *best)) {
          best = rel;
          best_l1 = l1;
        }
      } else if (a - err <= tolerance) {
        ambiguous = true;
      }
    }
  }
  if (best) {
    cert.verdict = IndependenceCertificate::Verdict::RelationFound;
    cert.relation = *best;
  } else if (ambiguous) {
    throw PreconditionError("a candidate relation cannot be decided at the current precision; refine rho0");
  }
  return cert;
}

std::vector<FamilyMember> generate_family(infection::Engine& engine, int n, int m,
                                          const std::vector<SeifertMatrix>& knots) {
  if (m < 2) throw PreconditionError("family needs at least two strands");
  if (n < 0) throw PreconditionError("depth must be nonnegative");
  for (const auto& k : knots) {
    int a = seifert::arf(k);
    if (a != 0)
      throw PreconditionError("knot " + (k.name().empty() ? std::string("(unnamed)") : k.name()) +
                              " has Arf invariant " + std::to_string(a));
  }
  freegroup::FreeWord eta = freegroup::canonical_curve(n, m);
  const int depth = engine.curve_depth(eta);
  if (depth != n) throw std::logic_error("canonical curve has depth " + std::to_string(depth));

  std::vector<FamilyMember> out;
  for (const auto& k : knots) {
    FamilyMember f;
    f.link = infection::BoundaryLink{m, {{eta, k}}};
    f.expr = infection::stack({f.link});
    f.eta = eta;
    f.depth = depth;
    f.knot = k;
    f.tags = infection::infer_tags(engine, f.expr);
    if (!f.tags.solvable_degree || !(*f.tags.solvable_degree == infection::Level{false, n}) ||
        !(*f.tags.grope_height == infection::Level{false, n + 1}))
      throw std::logic_error("family member tags disagree with the curve depth");
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace rhokit::families
