// rhokit: command line front end.
//
// Exit codes: 0 success, 1 internal error, 2 parse/usage error,
// 3 precondition violation, 4 depth overflow, 5 failed vanishing audit.

#include "rhokit/dsl.hpp"
#include "rhokit/errors.hpp"
#include "rhokit/families.hpp"
#include "rhokit/json_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace rhokit;
using json_io::Json;
using json_io::to_json;

namespace {

constexpr int kConsistencyFailure = 5;

struct Options {
  std::string format = "json";
  std::string tolerance;
  std::string knot, matrix, input, library, dsl, word, pattern = "[*,*]";
  std::string target, epsilon = "0.01", tau = "1e-6";
  std::vector<std::string> knots;
  int rank = 0, max_n = 4, samples = 0, depth = 2, strands = 2, budget = 6, normal_form = -1;
  std::size_t max_length = 64;
  long bound = 20;
  bool depth_given = false;
};

std::string read_source(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_source(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

Rational tolerance_of(const Options& o) {
  std::string text = o.tolerance;
  if (text.empty())
    if (const char* env = std::getenv("RHOKIT_TOLERANCE")) text = env;
  if (text.empty()) return Rational(1, 1000000000000LL);
  Rational t = parse_rational(text);
  if (t <= 0) throw PreconditionError("tolerance must be positive");
  if (t < parse_rational("1e-40")) throw PreconditionError("tolerance below 1e-40 is not supported");
  return t;
}

std::optional<families::KnotLibrary> load_library(const Options& o, const Rational& tol) {
  if (o.library.empty()) return std::nullopt;
  return json_io::library_from_json(read_json(o.library), tol);
}

dsl::KnotResolver resolver_of(const std::optional<families::KnotLibrary>& lib) {
  return lib ? lib->resolver() : dsl::KnotResolver{};
}

seifert::SeifertMatrix knot_input(const Options& o, const dsl::KnotResolver& resolver) {
  int given = !o.knot.empty() + !o.matrix.empty() + !o.input.empty();
  if (given != 1) throw PreconditionError("give exactly one of --knot, --matrix, --input");
  if (!o.knot.empty()) return dsl::parse_knot(o.knot, resolver);
  if (!o.matrix.empty()) {
    try {
      return json_io::matrix_from_json(Json::parse(o.matrix));
    } catch (const nlohmann::json::parse_error&) {
      throw ParseError("invalid JSON in --matrix");
    }
  }
  return json_io::matrix_from_json(read_json(o.input));
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.format == "text") std::cout << text << "\n";
  else std::cout << j.dump(2) << "\n";
}

std::string rho_text(const seifert::Rho0Value& v) {
  return to_string(v.value) + " +- " + to_string(v.error_bound);
}

int cmd_knot_info(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  auto k = knot_input(o, resolver_of(lib));
  auto sigma = seifert::signature_function(k);
  auto rho = seifert::rho0(k, tol);
  Json j;
  j["knot"] = to_json(k);
  j["genus"] = k.genus();
  j["alexander"] = to_json(seifert::alexander_polynomial(k));
  j["arf"] = seifert::arf(k);
  j["signature_function"] = to_json(sigma);
  j["rho0"] = to_json(rho);
  std::string text = "knot " + dsl::knot_text(k) + "\ngenus " + std::to_string(k.genus()) + "\nalexander " +
                     seifert::alexander_polynomial(k).str("t") + "\narf " + std::to_string(seifert::arf(k)) +
                     "\nbreakpoints " + std::to_string(sigma.breakpoints.size()) + "\nrho0 " + rho_text(rho);
  emit(o, j, text);
  return 0;
}

int cmd_sigfn(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  auto k = knot_input(o, resolver_of(lib));
  auto sigma = seifert::signature_function(k);
  if (o.samples > 0) {
    std::printf("t,sigma\n");
    for (int i = 0; i < o.samples; ++i) {
      auto v = sigma.at(Rational(i, o.samples));
      if (v) std::printf("%.17g,%d\n", static_cast<double>(i) / o.samples, *v);
      else std::printf("%.17g,\n", static_cast<double>(i) / o.samples);
    }
    return 0;
  }
  Json j;
  j["knot"] = to_json(k);
  j["signature_function"] = to_json(sigma);
  std::string text;
  for (std::size_t i = 0; i < sigma.values.size(); ++i) {
    if (i) text += "\n";
    std::string from = i == 0 ? "0" : to_string(sigma.breakpoints[i - 1].midpoint());
    std::string to = i < sigma.breakpoints.size() ? to_string(sigma.breakpoints[i].midpoint()) : "1";
    text += "[" + from + ", " + to + "] " + std::to_string(sigma.values[i]);
  }
  emit(o, j, text);
  return 0;
}

int cmd_rho0(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  auto k = knot_input(o, resolver_of(lib));
  auto rho = seifert::rho0(k, tol);
  Json j;
  j["knot"] = to_json(k);
  j["tolerance"] = to_string(tol);
  j["rho0"] = to_json(rho);
  emit(o, j, rho_text(rho));
  return 0;
}

int cmd_depth(const Options& o) {
  if (o.max_n < 0) throw PreconditionError("max-n must be nonnegative");
  auto w = freegroup::FreeWord::parse(o.word, o.rank > 0 ? std::optional<int>(o.rank) : std::nullopt);
  auto d = freegroup::derived_depth(w, {o.max_n, o.max_length});
  if (d.kind == freegroup::DerivedDepth::Kind::Exceeds) throw DepthOverflow(w.str(), o.max_n);
  Json j;
  j["word"] = w.str();
  j["rank"] = w.rank();
  j["max_n"] = o.max_n;
  j["depth"] = to_json(d);
  if (o.normal_form >= 0) {
    if (o.normal_form > 4) throw PreconditionError("normal form level above 4 is not supported");
    j["normal_form"] = to_json(freegroup::project_to_solvable(w, o.normal_form));
  }
  emit(o, j, d.str());
  return 0;
}

infection::Engine make_engine(const Options& o, const Rational& tol) {
  if (o.max_n < 0) throw PreconditionError("max-n must be nonnegative");
  return infection::Engine({tol, {o.max_n, o.max_length}});
}

Json expression_report(infection::Engine& engine, const infection::Expr& e) {
  Json j;
  j["expression"] = dsl::expr_text(e);
  j["dag"] = to_json(e);
  j["max_depth"] = engine.max_depth(e);
  j["rho_vector"] = to_json(engine.rho_vector(e));
  j["slice_obstruction"] = to_json(infection::slice_obstruction(engine, e));
  j["tags"] = to_json(infection::infer_tags(engine, e));
  return j;
}

infection::Expr expression_input(const Options& o, const dsl::KnotResolver& resolver) {
  if (o.dsl.empty() == o.input.empty()) throw PreconditionError("give exactly one of --dsl, --input");
  if (!o.dsl.empty()) return dsl::parse_expr(o.dsl, resolver);
  return json_io::expr_from_json(read_json(o.input), resolver);
}

int cmd_eval(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  auto e = expression_input(o, resolver_of(lib));
  auto engine = make_engine(o, tol);
  Json j = expression_report(engine, e);
  emit(o, j, engine.rho_vector(e).str() + "\n" + infection::slice_obstruction(engine, e).str());
  return 0;
}

int cmd_bing(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  auto k = knot_input(o, resolver_of(lib));
  auto engine = make_engine(o, tol);
  auto b = infection::bing_double(k, o.pattern);
  Json j;
  j["pattern"] = b.pattern;
  j["components"] = b.components;
  j["eta"] = b.eta.str();
  Json report = expression_report(engine, b.expr);
  for (auto& [key, value] : report.items()) j[key] = value;
  emit(o, j, engine.rho_vector(b.expr).str() + "\n" + infection::slice_obstruction(engine, b.expr).str());
  return 0;
}

std::vector<seifert::SeifertMatrix> knot_list(const Options& o, const dsl::KnotResolver& resolver) {
  if (o.knots.empty()) throw PreconditionError("give at least one --knot");
  std::vector<seifert::SeifertMatrix> out;
  for (const auto& text : o.knots) out.push_back(dsl::parse_knot(text, resolver));
  return out;
}

int cmd_family(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  auto knots = knot_list(o, resolver_of(lib));
  auto engine = make_engine(o, tol);
  auto members = families::generate_family(engine, o.depth, o.strands, knots);
  Json j;
  j["n"] = o.depth;
  j["m"] = o.strands;
  j["eta"] = freegroup::canonical_curve(o.depth, o.strands).str();
  j["members"] = Json::array();
  std::string text;
  for (const auto& f : members) {
    j["members"].push_back(to_json(f, engine));
    text += (text.empty() ? "" : "\n") + dsl::knot_text(f.knot) + " " + engine.rho_vector(f.expr).str();
  }
  emit(o, j, text);
  return 0;
}

int cmd_approx(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  families::KnotLibrary library = lib ? *lib : families::KnotLibrary::standard();
  auto a = families::approximate_target(parse_rational(o.target), parse_rational(o.epsilon), library,
                                        {.budget = o.budget});
  std::string text;
  for (const auto& [name, c] : a.terms) {
    if (!text.empty()) text += c < 0 ? " - " : " + ";
    else if (c < 0) text += "-";
    text += std::to_string(c < 0 ? -c : c) + "*" + name;
  }
  if (text.empty()) text = "unknot";
  emit(o, to_json(a),
       text + "\nscale " + std::to_string(a.scale) + "\nrho0 " + rho_text(a.recomputed) + "\ndistance <= " +
           to_string(a.distance_bound));
  return 0;
}

int cmd_independence(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  auto knots = knot_list(o, resolver_of(lib));
  std::vector<std::string> labels;
  std::vector<seifert::Rho0Value> values;
  auto engine = make_engine(o, tol);
  if (o.depth_given) {
    for (const auto& f : families::generate_family(engine, o.depth, o.strands, knots)) {
      labels.push_back(dsl::knot_text(f.knot));
      values.push_back(engine.rho(f.expr, static_cast<std::size_t>(o.depth)));
    }
  } else {
    for (const auto& k : knots) {
      labels.push_back(dsl::knot_text(k));
      values.push_back(engine.knot_rho0(k));
    }
  }
  auto cert = families::independence_certificate(labels, values, o.bound, parse_rational(o.tau));
  Json j = to_json(cert);
  if (o.depth_given) j["family"] = {{"n", o.depth}, {"m", o.strands}};
  emit(o, j, cert.verdict_str());
  return 0;
}

int cmd_audit(const Options& o) {
  Rational tol = tolerance_of(o);
  auto lib = load_library(o, tol);
  auto e = expression_input(o, resolver_of(lib));
  auto engine = make_engine(o, tol);
  auto report = infection::check_vanishing(engine, e);
  Json j;
  j["expression"] = dsl::expr_text(e);
  j["tags"] = to_json(infection::infer_tags(engine, e));
  j["report"] = to_json(report);
  emit(o, j, report.passed() ? "passed" : "FAILED");
  return report.passed() ? 0 : kConsistencyFailure;
}

int fail(const std::string& kind, const std::string& message, int code) {
  Json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levine-Tristram signatures, rho invariants and infection bookkeeping"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--tolerance", o.tolerance, "rho0 error tolerance (default $RHOKIT_TOLERANCE or 1e-12)");
    s->add_option("--library", o.library, "JSON knot library file");
  };
  auto add_knot = [&](CLI::App* s) {
    s->add_option("--knot", o.knot, "Knot expression, e.g. trefoil#mirror(figure8)");
    s->add_option("--matrix", o.matrix, "Seifert matrix as JSON");
    s->add_option("--input", o.input, "JSON matrix file, - for stdin");
  };
  auto add_depth_limits = [&](CLI::App* s) {
    s->add_option("--max-n", o.max_n, "Largest derived depth explored");
    s->add_option("--max-length", o.max_length, "Longest word accepted by depth computations");
  };

  auto* knot_info = app.add_subcommand("knot-info", "Alexander polynomial, Arf invariant, signature function, rho0");
  add_common(knot_info);
  add_knot(knot_info);
  auto* sigfn = app.add_subcommand("sigfn", "Levine-Tristram signature function");
  add_common(sigfn);
  add_knot(sigfn);
  sigfn->add_option("--samples", o.samples, "Emit CSV samples at t = i/N")->check(CLI::Range(1, 10000000));
  auto* rho0 = app.add_subcommand("rho0", "Integral of the signature function");
  add_common(rho0);
  add_knot(rho0);
  auto* depth = app.add_subcommand("depth", "Derived series depth of a free group word");
  depth->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  depth->add_option("--word", o.word, "Word, e.g. \"x1 x2^-1 [x1,x2]\"")->required();
  depth->add_option("--rank", o.rank, "Free group rank (default: largest generator)");
  depth->add_option("--normal-form", o.normal_form, "Also print the image in F/F^(n)");
  add_depth_limits(depth);
  auto* eval = app.add_subcommand("eval", "Evaluate a manifold expression");
  add_common(eval);
  eval->add_option("--dsl", o.dsl, "Expression text");
  eval->add_option("--input", o.input, "JSON expression file, - for stdin");
  add_depth_limits(eval);
  auto* bing = app.add_subcommand("bing", "Iterated Bing double of a knot");
  add_common(bing);
  add_knot(bing);
  bing->add_option("--pattern", o.pattern, "Pattern such as [*,*] or [[*,*],[*,*]] or an iteration count");
  add_depth_limits(bing);
  auto* family = app.add_subcommand("family", "Infections of a trivial link along a canonical depth-n curve");
  add_common(family);
  family->add_option("--knot", o.knots, "Arf invariant zero knot (repeatable)");
  family->add_option("-n,--depth", o.depth, "Curve depth")->check(CLI::Range(0, 4));
  family->add_option("-m,--strands", o.strands, "Number of link components")->check(CLI::Range(2, 16));
  add_depth_limits(family);
  auto* approx = app.add_subcommand("approx", "Knot combination with rho0 close to a target");
  add_common(approx);
  approx->add_option("--target", o.target, "Target value, e.g. -1.25 or 7/3")->required();
  approx->add_option("--epsilon", o.epsilon, "Allowed distance");
  approx->add_option("--budget", o.budget, "Bound on the sum of |coefficients|")->check(CLI::Range(0, 12));
  auto* independence = app.add_subcommand("independence", "Search for small integer relations among rho values");
  add_common(independence);
  independence->add_option("--knot", o.knots, "Knot (repeatable)");
  independence->add_option("--bound", o.bound, "Coefficient bound B")->check(CLI::Range(1L, 1000L));
  independence->add_option("--tau", o.tau, "Relation tolerance");
  auto* dopt = independence->add_option("-n,--depth", o.depth, "Use rho_n of the depth-n family instead of rho0");
  dopt->check(CLI::Range(0, 4));
  independence->add_option("-m,--strands", o.strands, "Strands for --depth")->check(CLI::Range(2, 16));
  add_depth_limits(independence);
  auto* audit = app.add_subcommand("audit", "Check rho_k = 0 below the tagged solvable degree");
  add_common(audit);
  audit->add_option("--dsl", o.dsl, "Expression text");
  audit->add_option("--input", o.input, "JSON expression file, - for stdin");
  add_depth_limits(audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what(), 2);
  }
  o.depth_given = dopt->count() > 0;

  try {
    if (knot_info->parsed()) return cmd_knot_info(o);
    if (sigfn->parsed()) return cmd_sigfn(o);
    if (rho0->parsed()) return cmd_rho0(o);
    if (depth->parsed()) return cmd_depth(o);
    if (eval->parsed()) return cmd_eval(o);
    if (bing->parsed()) return cmd_bing(o);
    if (family->parsed()) return cmd_family(o);
    if (approx->parsed()) return cmd_approx(o);
    if (independence->parsed()) return cmd_independence(o);
    if (audit->parsed()) return cmd_audit(o);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), 2);
  } catch (const DepthOverflow& e) {
    return fail("depth_overflow", e.what(), 4);
  } catch (const PreconditionError& e) {
    return fail("precondition", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 2;
}
