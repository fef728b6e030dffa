// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "oracles.hpp"
#include "rhokit/families.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace rhokit;
using seifert::Rho0Value;
using seifert::SeifertMatrix;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + what;
    }
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

Rational absolute(const Rational& r) { return r < 0 ? Rational(-r) : r; }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const std::vector<SeifertMatrix>& corpus() {
  static const std::vector<SeifertMatrix> c = seifert::random_corpus(50, 20240601, 2);
  return c;
}

Outcome rho0_exactness() {
  Outcome o;
  const Rational nine = parse_rational("1e-9");
  Rho0Value unknot = seifert::rho0(seifert::registry_knot("unknot"));
  o.require(unknot.value == 0 && unknot.exact(), "unknot exactly 0");
  Rho0Value tref = seifert::rho0(seifert::registry_knot("trefoil"));
  o.require(absolute(tref.value + Rational(4, 3)) <= nine && tref.error_bound <= nine, "trefoil -4/3");
  Rho0Value f8 = seifert::rho0(seifert::registry_knot("figure8"));
  o.require(absolute(f8.value) <= nine && f8.error_bound <= nine, "figure8 0");
  for (const char* name : {"unknot", "trefoil", "figure8"}) {
    double dense = oracle::dense_rho0(seifert::registry_knot(name), 100000);
    double ours = seifert::rho0(seifert::registry_knot(name)).approx();
    o.require(std::abs(dense - ours) < 1e-3, std::string("dense oracle for ") + name);
  }
  o.note("trefoil " + to_string(tref.value) + " bound " + to_string(tref.error_bound));
  return o;
}

bool breakpoint_is_root(const Polynomial& delta, const Polynomial& sqf, const seifert::Breakpoint& b) {
  if (b.root_of_unity) {
    auto [k, n] = *b.root_of_unity;
    if (std::gcd(k, n) != 1 || b.t.lo != Rational(k, n)) return false;
    return Polynomial::divmod(delta, cyclotomic(n)).second.is_zero();
  }
  return oracle::circle_sign(sqf, b.t.lo) * oracle::circle_sign(sqf, b.t.hi) < 0;
}

Outcome signature_invariants() {
  Outcome o;
  std::mt19937_64 rng(99);
  int checked_points = 0;
  for (const auto& v : corpus()) {
    auto sigma = seifert::signature_function(v);
    const int g = static_cast<int>(v.genus());
    const std::size_t n = sigma.breakpoints.size();
    bool even = true, bounded = true, symmetric = true, rooted = true, oracle_ok = true;
    for (int s : sigma.values) {
      even = even && s % 2 == 0;
      bounded = bounded && std::abs(s) <= 2 * g;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = sigma.breakpoints[i].t;
      const auto& b = sigma.breakpoints[n - 1 - i].t;
      symmetric = symmetric && a.lo == 1 - b.hi && a.hi == 1 - b.lo;
    }
    for (std::size_t i = 1; i < n; ++i) symmetric = symmetric && sigma.values[i] == sigma.values[n - i];
    Polynomial delta = seifert::alexander_polynomial(v);
    Polynomial sqf = squarefree_part(delta);
    for (const auto& b : sigma.breakpoints) rooted = rooted && breakpoint_is_root(delta, sqf, b);
    for (int k = 0; k < 20; ++k) {
      Rational t(static_cast<long>(rng() % 1000000) + 1, 1000001);
      auto s = sigma.at(t), s_mirror = sigma.at(1 - t);
      if (!s) continue;
      symmetric = symmetric && s_mirror && *s == *s_mirror;
      oracle_ok = oracle_ok && *s == oracle::numeric_signature(v, to_double(t));
      ++checked_points;
    }
    o.require(even, v.name() + " even values");
    o.require(bounded, v.name() + " |sigma| <= 2g");
    o.require(symmetric, v.name() + " symmetry");
    o.require(sigma.values.at(0) == 0 && sigma.at(0) == 0, v.name() + " zero arc at t=0");
    o.require(rooted, v.name() + " breakpoints are Alexander roots");
    o.require(oracle_ok, v.name() + " agrees with eigenvalue oracle");
  }
  o.note(std::to_string(corpus().size()) + " matrices, " + std::to_string(checked_points) + " oracle points");
  return o;
}

Outcome additivity_mirror() {
  Outcome o;
  const auto& c = corpus();
  std::vector<Rho0Value> rho;
  for (const auto& v : c) rho.push_back(seifert::rho0(v));
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Rho0Value m = seifert::rho0(seifert::mirror(c[i]));
    o.require(absolute(m.value + rho[i].value) <= m.error_bound + rho[i].error_bound, c[i].name() + " mirror");
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      Rho0Value s = seifert::rho0(seifert::connected_sum(c[i], c[j]));
      Rational gap = absolute(s.value - rho[i].value - rho[j].value);
      o.require(gap <= s.error_bound + rho[i].error_bound + rho[j].error_bound, c[i].name() + "+" + c[j].name());
      ++pairs;
    }
  }
  const Rational two_nine = parse_rational("2e-9");
  for (std::size_t i = 0; i < 10; ++i) {
    Rho0Value z = seifert::rho0(seifert::connected_sum(c[i], seifert::mirror(c[i])));
    o.require(absolute(z.value) + z.error_bound <= two_nine, c[i].name() + " # mirror vanishes");
  }
  o.note(std::to_string(pairs) + " pairs, " + std::to_string(c.size()) + " mirrors, 10 slice sums");
  return o;
}

freegroup::FreeWord random_word(std::mt19937_64& rng, int rank, std::size_t max_len) {
  std::size_t len = rng() % (max_len + 1);
  std::vector<freegroup::Letter> ls;
  for (std::size_t i = 0; i < len; ++i) ls.push_back({static_cast<int>(rng() % rank) + 1, (rng() & 1) ? 1 : -1});
  return freegroup::FreeWord(rank, ls);
}

bool fox_identity(const freegroup::FreeWord& w, int n) {
  using freegroup::GroupRingElement;
  using freegroup::SolvableElement;
  const int rank = w.rank();
  GroupRingElement lhs(rank, n);
  for (int i = 1; i <= rank; ++i) {
    GroupRingElement x = GroupRingElement::from_group(SolvableElement::generator(rank, n, i)) -
                         GroupRingElement::integer(rank, n, 1);
    lhs = lhs + freegroup::fox_derivative(w, i, n) * x;
  }
  return lhs == GroupRingElement::from_group(freegroup::project_to_solvable(w, n)) -
                    GroupRingElement::integer(rank, n, 1);
}

Outcome depth_correctness() {
  Outcome o;
  using freegroup::FreeWord;
  const freegroup::DepthLimits limits{.max_n = 3};
  o.require(freegroup::derived_depth(FreeWord::parse("[x1,x2]", 2), limits).value == 1, "depth [x1,x2] = 1");
  for (int m : {2, 3}) {
    for (int n : {2, 3}) {
      auto d = freegroup::derived_depth(freegroup::canonical_curve(n, m), limits);
      o.require(d.finite() && d.value == n, "canonical depth-" + std::to_string(n) + " curve on " +
                                                std::to_string(m) + " strands");
    }
  }
  std::mt19937_64 rng(4242);
  int members = 0, fox_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int rank = 2 + trial % 2;
    FreeWord w;
    if (trial % 3 == 0) {
      w = random_word(rng, rank, 12);
    } else {
      FreeWord a = random_word(rng, rank, 3), b = random_word(rng, rank, 3);
      w = trial % 3 == 1 ? freegroup::commutator(a, b)
                         : freegroup::commutator(freegroup::commutator(a, FreeWord::generator(rank, 1)),
                                                 freegroup::commutator(b, FreeWord::generator(rank, 2)));
      if (w.length() > 12) w = FreeWord(rank, {w.letters().begin(), w.letters().begin() + 12});
    }
    bool ours = freegroup::project_to_solvable(w, 2).is_identity();
    bool theirs = oracle::in_second_derived(w.signed_letters(), rank);
    o.require(ours == theirs, "F^(2) membership of " + w.str());
    members += ours;
    for (int n = 0; n <= 2; ++n) {
      o.require(fox_identity(w, n), "Fox identity for " + w.str());
      ++fox_checked;
    }
  }
  o.note("100 words, " + std::to_string(members) + " in F^(2), " + std::to_string(fox_checked) + " Fox identities");
  return o;
}

infection::RhoVector vec(std::vector<Rational> head, Rational tail) {
  infection::RhoVector v;
  for (auto& h : head) v.head.push_back({h, 0});
  v.tail = {std::move(tail), 0};
  return v;
}

bool exactly(const infection::RhoVector& a, const infection::RhoVector& b) {
  if (!(a == b)) return false;
  for (std::size_t i = 0; i <= a.head.size(); ++i)
    if (!a.at(i).exact()) return false;
  return true;
}

Outcome diff_rho_engine() {
  Outcome o;
  using namespace infection;
  Engine engine;
  const auto tref = seifert::registry_knot("trefoil");
  const auto bing = freegroup::FreeWord::parse("[x1,x2]", 2);
  RhoVector bd = engine.rho_vector(infect(trivial_link(2), bing, tref));
  o.require(exactly(bd, vec({0}, Rational(-4, 3))), "BD(trefoil) = (0; tail -4/3), got " + bd.str());
  RhoVector fam = engine.rho_vector(
      infect(trivial_link(2), freegroup::canonical_curve(2, 2), seifert::connected_sum(tref, tref)));
  o.require(exactly(fam, vec({0, 0}, Rational(-8, 3))), "depth-2 member = (0, 0; tail -8/3), got " + fam.str());

  const auto unknot = seifert::registry_knot("unknot");
  const auto f8 = seifert::registry_knot("figure8");
  std::vector<Expr> bases = {trivial_link(2), infect(trivial_link(2), bing, tref),
                             infect(trivial_link(3), freegroup::canonical_curve(2, 3), tref)};
  for (const auto& b : bases) {
    const int m = tracked_group(b).rank;
    for (int n = 0; n <= 3; ++n)
      o.require(engine.rho_vector(infect(b, freegroup::canonical_curve(n, m), unknot)) == engine.rho_vector(b),
                "unknot infection is neutral");
    for (int n1 = 0; n1 <= 2; ++n1) {
      for (int n2 = 0; n2 <= 2; ++n2) {
        auto c1 = freegroup::canonical_curve(n1, m), c2 = freegroup::canonical_curve(n2, m);
        RhoVector ab = engine.rho_vector(infect(infect(b, c1, tref), c2, f8));
        RhoVector ba = engine.rho_vector(infect(infect(b, c2, f8), c1, tref));
        o.require(ab == ba, "infection order commutes");
      }
    }
  }
  o.note("BD(trefoil) " + bd.str() + ", depth-2 member " + fam.str());
  return o;
}

std::vector<SeifertMatrix> arf_zero_knots() {
  return {seifert::registry_knot("twist(-2)"), seifert::registry_knot("twist(-4)"),
          seifert::registry_knot("twist(-6)"), seifert::registry_knot("twist(-8)"),
          dsl::parse_knot("trefoil#trefoil"), dsl::parse_knot("twist(-3)#trefoil")};
}

Outcome vanishing_audit() {
  Outcome o;
  infection::Engine engine;
  std::size_t members = 0;
  for (int m : {2, 3}) {
    for (int n = 0; n <= 3; ++n) {
      for (const auto& f : families::generate_family(engine, n, m, arf_zero_knots())) {
        infection::RhoVector v = engine.rho_vector(f.expr);
        bool ok = f.tags.solvable_degree && !f.tags.solvable_degree->unbounded &&
                  f.tags.solvable_degree->value == n;
        for (int k = 0; k < n; ++k) ok = ok && v.at(k).value == 0 && v.at(k).exact();
        ok = ok && infection::check_vanishing(engine, f.expr).passed();
        o.require(ok, "member " + dsl::expr_text(f.expr));
        ++members;
      }
    }
  }
  o.require(members >= 20, "at least 20 members");
  o.note(std::to_string(members) + " members, n = 0..3, m = 2,3");
  return o;
}

Outcome main1_witness() {
  Outcome o;
  // block sums of one or two twist knots, first five with Arf invariant zero
  std::vector<SeifertMatrix> chosen;
  auto consider = [&](SeifertMatrix k) {
    if (chosen.size() >= 5 || seifert::arf(k) != 0) return;
    for (const auto& c : chosen)
      if (c == k) return;
    chosen.push_back(std::move(k));
  };
  for (int a = -1; a >= -6; --a) consider(seifert::registry_knot("twist(" + std::to_string(a) + ")"));
  for (int a = -1; a >= -6; --a)
    for (int b = a; b >= -6; --b)
      consider(seifert::connected_sum(seifert::registry_knot("twist(" + std::to_string(a) + ")"),
                                      seifert::registry_knot("twist(" + std::to_string(b) + ")")));
  o.require(chosen.size() == 5, "five Arf-0 knots");

  infection::Engine engine;
  std::vector<std::string> labels;
  std::vector<Rho0Value> values;
  for (const auto& f : families::generate_family(engine, 2, 2, chosen)) {
    labels.push_back(f.knot.name());
    values.push_back(engine.rho(f.expr, 2));
    o.require(engine.rho(f.expr, 1).value == 0 && engine.rho(f.expr, 0).value == 0, "lower rho vanish");
  }
  auto cert = families::independence_certificate(labels, values, 20, parse_rational("1e-6"));
  if (cert.verdict == families::IndependenceCertificate::Verdict::RelationFound)
    o.require(cert.relation_reproduces(), "found relation reproduces");
  auto again = families::independence_certificate(labels, values, 20, parse_rational("1e-6"));
  o.require(again.verdict_str() == cert.verdict_str(), "reproducible verdict");
  std::string names;
  for (const auto& l : labels) names += (names.empty() ? "" : ", ") + l;
  o.note("knots {" + names + "}, verdict " + cert.verdict_str() + " over " + std::to_string(cert.searched) +
         " vectors");
  return o;
}

Outcome gen_dense_witness() {
  Outcome o;
  const families::KnotLibrary lib = families::KnotLibrary::standard();
  const Rational eps = parse_rational("0.01");
  for (const char* r : {"0.5", "-1.25", "3.0"}) {
    try {
      families::Approximation a = families::approximate_target(parse_rational(r), eps, lib);
      Rho0Value fresh = seifert::rho0(a.realized);
      Rational dist = absolute(fresh.value - parse_rational(r)) + fresh.error_bound;
      o.require(dist < eps, std::string("round trip for ") + r);
      o.require(std::abs(oracle::dense_rho0(a.realized, 20000) - to_double(parse_rational(r))) < 0.01 + 1e-3,
                std::string("dense oracle for ") + r);
      if (absolute(parse_rational(r)) >= 2) o.require(a.scale > 1, std::string("m-scaling for ") + r);
      std::string combo;
      for (const auto& [name, c] : a.terms) combo += (combo.empty() ? "" : " ") + std::to_string(c) + "*" + name;
      o.note(std::string(r) + " <- " + combo + " (m=" + std::to_string(a.scale) + ", |err| < " +
             fmt(to_double(dist)) + ")");
    } catch (const std::exception& e) {
      o.require(false, std::string(r) + ": " + e.what());
    }
  }
  return o;
}

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  if (pclose(p) != 0) out += "\n<nonzero exit>";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism() {
  Outcome o;
  const std::string cli = RHOKIT_CLI_PATH, golden = RHOKIT_GOLDEN_DIR;
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"rho0 --knot trefoil", "rho0_trefoil.json"},
      {"depth --word '[x1,x2]' --rank 2 --max-n 4", "depth_bing_curve.json"},
      {"eval --dsl 'trivial(2) |> infect([x1,x2], knot:\"unknot\")'", "eval_unknot_infection.json"},
  };
  for (const auto& [args, file] : runs) {
    std::string first = run_capture(cli + " " + args), second = run_capture(cli + " " + args);
    o.require(first == second, "repeatable: " + args);
    o.require(first == read_file(golden + "/" + file), "golden " + file);
  }
  o.note("3 invocations, each run twice");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "rho0 exactness", 5, rho0_exactness},
      {2, "signature function invariants", 30, signature_invariants},
      {3, "additivity and mirror", 60, additivity_mirror},
      {4, "derived depth correctness", 120, depth_correctness},
      {5, "rho rewriting engine", 0, diff_rho_engine},
      {6, "vanishing audit", 0, vanishing_audit},
      {7, "bounded independence witness", 300, main1_witness},
      {8, "rho0 target approximation", 0, gen_dense_witness},
      {9, "CLI determinism", 0, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds)
      out.require(false, "runtime " + fmt(secs) + " s over limit " + fmt(c.limit_seconds) + " s");
    failed += !out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.title << " (" << fmt(secs)
              << " s): " << out.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
