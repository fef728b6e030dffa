#include "rhokit/json_io.hpp"

#include "rhokit/errors.hpp"

namespace rhokit::json_io {

using infection::Expr;
using seifert::SeifertMatrix;

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

Json to_json(const SeifertMatrix& k) {
  Json j;
  j["name"] = k.name();
  j["matrix"] = k.rows();
  return j;
}

SeifertMatrix matrix_from_json(const Json& j) {
  std::vector<std::vector<std::int64_t>> rows;
  std::string name;
  try {
    if (j.is_array()) {
      rows = j.get<std::vector<std::vector<std::int64_t>>>();
    } else if (j.is_object()) {
      rows = field(j, "matrix").get<std::vector<std::vector<std::int64_t>>>();
      if (j.contains("name")) name = j.at("name").get<std::string>();
    } else {
      throw ParseError("expected a matrix");
    }
  } catch (const nlohmann::json::exception&) {
    throw ParseError("matrix must be an array of integer rows");
  }
  return SeifertMatrix(std::move(rows), std::move(name));
}

Json to_json(const seifert::Rho0Value& v) {
  Json j;
  j["value"] = to_string(v.value);
  j["error_bound"] = to_string(v.error_bound);
  return j;
}

Json to_json(const seifert::Breakpoint& b) {
  Json j;
  j["lo"] = to_string(b.t.lo);
  j["hi"] = to_string(b.t.hi);
  if (b.root_of_unity) j["root_of_unity"] = {b.root_of_unity->first, b.root_of_unity->second};
  else j["root_of_unity"] = nullptr;
  return j;
}

Json to_json(const seifert::SignatureFunction& s) {
  Json j;
  j["breakpoints"] = Json::array();
  for (const auto& b : s.breakpoints) j["breakpoints"].push_back(to_json(b));
  j["values"] = s.values;
  return j;
}

Json to_json(const Polynomial& p) {
  Json j;
  j["coefficients"] = Json::array();
  for (const auto& c : p.coeffs()) j["coefficients"].push_back(to_string(c));
  j["text"] = p.str("t");
  return j;
}

Json to_json(const freegroup::SolvableElement& e) {
  Json j;
  j["level"] = e.level();
  j["rank"] = e.rank();
  if (e.level() == 0) return j;
  j["shadow"] = to_json(e.shadow());
  j["fox"] = Json::array();
  for (const auto& f : e.fox()) j["fox"].push_back(to_json(f));
  return j;
}

Json to_json(const freegroup::GroupRingElement& r) {
  Json j = Json::array();
  for (const auto& [g, c] : r.terms()) j.push_back({{"coefficient", c}, {"element", to_json(g)}});
  return j;
}

Json to_json(const freegroup::DerivedDepth& d) {
  switch (d.kind) {
    case freegroup::DerivedDepth::Kind::Finite: return d.value;
    case freegroup::DerivedDepth::Kind::Identity: return "identity";
    case freegroup::DerivedDepth::Kind::Exceeds: return d.str();
  }
  return nullptr;
}

namespace {

Json link_json(const infection::BoundaryLink& l) {
  Json j;
  j["components"] = l.components;
  j["infections"] = Json::array();
  for (const auto& [eta, k] : l.infections) j["infections"].push_back({{"eta", eta.str()}, {"knot", to_json(k)}});
  return j;
}

SeifertMatrix knot_from_json(const Json& j, const dsl::KnotResolver& resolver) {
  if (j.is_string()) return dsl::parse_knot(j.get<std::string>(), resolver);
  return matrix_from_json(j);
}

}  // namespace

Json to_json(const Expr& e) {
  return std::visit(
      [](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        Json j;
        if constexpr (std::is_same_v<T, infection::KnotSurgery>) {
          j["type"] = "knot";
          j["knot"] = to_json(n.knot);
        } else if constexpr (std::is_same_v<T, infection::TrivialLinkSurgery>) {
          j["type"] = "trivial";
          j["components"] = n.components;
        } else if constexpr (std::is_same_v<T, infection::Infect>) {
          j["type"] = "infect";
          j["base"] = to_json(n.base);
          j["eta"] = n.eta.str();
          j["knot"] = to_json(n.knot);
          j["bounds_disk"] = n.bounds_disk;
        } else if constexpr (std::is_same_v<T, infection::ConnectedSum>) {
          j["type"] = "sum";
          j["left"] = to_json(n.left);
          j["right"] = to_json(n.right);
        } else {
          j["type"] = "stack";
          j["links"] = Json::array();
          for (const auto& l : n.links) j["links"].push_back(link_json(l));
        }
        return j;
      },
      e->kind);
}

Expr expr_from_json(const Json& j, const dsl::KnotResolver& resolver) {
  const std::string type = get<std::string>(j, "type");
  if (type == "trivial") return infection::trivial_link(get<int>(j, "components"));
  if (type == "knot") return infection::knot_surgery(knot_from_json(field(j, "knot"), resolver));
  if (type == "sum")
    return infection::connected_sum(expr_from_json(field(j, "left"), resolver),
                                    expr_from_json(field(j, "right"), resolver));
  if (type == "infect") {
    Expr base = expr_from_json(field(j, "base"), resolver);
    infection::TrackedGroup g = infection::tracked_group(base);
    std::optional<int> rank;
    if (g.kind != infection::TrackedGroup::Kind::Opaque) rank = g.rank;
    bool disk = j.contains("bounds_disk") ? get<bool>(j, "bounds_disk") : true;
    return infection::infect(base, freegroup::FreeWord::parse(get<std::string>(j, "eta"), rank),
                             knot_from_json(field(j, "knot"), resolver), disk);
  }
  if (type == "stack") {
    std::vector<infection::BoundaryLink> links;
    const Json& arr = field(j, "links");
    if (!arr.is_array()) throw ParseError("field 'links' must be an array");
    for (const auto& l : arr) {
      infection::BoundaryLink link{get<int>(l, "components"), {}};
      if (l.contains("infections")) {
        for (const auto& inf : l.at("infections"))
          link.infections.emplace_back(freegroup::FreeWord::parse(get<std::string>(inf, "eta"), link.components),
                                       knot_from_json(field(inf, "knot"), resolver));
      }
      links.push_back(std::move(link));
    }
    return infection::stack(std::move(links));
  }
  throw ParseError("unknown expression type '" + type + "'");
}

Json to_json(const infection::RhoVector& v) {
  Json j;
  j["head"] = Json::array();
  for (const auto& h : v.head) j["head"].push_back(to_json(h));
  j["tail"] = to_json(v.tail);
  j["text"] = v.str();
  return j;
}

Json to_json(const infection::Level& l) {
  if (l.unbounded) return "unbounded";
  return l.value;
}

Json to_json(const infection::FiltrationTags& t) {
  Json j;
  j["solvable_degree"] = t.solvable_degree ? to_json(*t.solvable_degree) : Json(nullptr);
  j["grope_height"] = t.grope_height ? to_json(*t.grope_height) : Json(nullptr);
  j["certificates"] = t.certificates;
  return j;
}

Json to_json(const infection::SliceVerdict& v) {
  Json j;
  j["verdict"] = v.obstructed ? "Obstructed" : "Inconclusive";
  if (v.obstructed) {
    j["index"] = v.index;
    j["value"] = to_json(v.value);
  }
  j["text"] = v.str();
  return j;
}

Json to_json(const infection::VanishingReport& r) {
  Json j;
  j["solvable_degree"] = to_json(r.solvable_degree);
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"index", c.index}, {"value", to_json(c.value)}, {"passed", c.passed}});
  j["passed"] = r.passed();
  return j;
}

Json to_json(const families::LibraryEntry& e) {
  Json j;
  j["name"] = e.name;
  j["matrix"] = e.matrix.rows();
  j["rho0"] = to_json(e.rho0);
  j["arf"] = e.arf;
  return j;
}

families::KnotLibrary library_from_json(const Json& j, const Rational& tolerance) {
  if (!j.is_array()) throw ParseError("library must be a JSON array of named matrices");
  families::KnotLibrary lib(tolerance);
  for (const auto& item : j) {
    SeifertMatrix m = matrix_from_json(item);
    if (m.name().empty()) throw ParseError("library entries need a name");
    std::string name = m.name();
    lib.add(std::move(name), std::move(m));
  }
  return lib;
}

Json to_json(const families::Approximation& a) {
  Json j;
  j["target"] = to_string(a.target);
  j["epsilon"] = to_string(a.epsilon);
  j["scale"] = a.scale;
  j["terms"] = Json::array();
  for (const auto& [name, c] : a.terms) j["terms"].push_back({{"knot", name}, {"coefficient", c}});
  j["predicted"] = to_json(a.predicted);
  j["realized"] = to_json(a.realized);
  j["recomputed"] = to_json(a.recomputed);
  j["distance_bound"] = to_string(a.distance_bound);
  return j;
}

Json to_json(const families::IndependenceCertificate& c) {
  Json j;
  j["labels"] = c.labels;
  j["values"] = Json::array();
  for (const auto& v : c.values) j["values"].push_back(to_json(v));
  j["bound"] = c.bound;
  j["tolerance"] = to_string(c.tolerance);
  j["verdict"] =
      c.verdict == families::IndependenceCertificate::Verdict::RelationFound ? "RelationFound" : "NoRelationUpTo";
  j["relation"] = c.verdict == families::IndependenceCertificate::Verdict::RelationFound ? Json(c.relation)
                                                                                        : Json(nullptr);
  j["searched"] = c.searched;
  j["method"] = c.method;
  j["text"] = c.verdict_str();
  return j;
}

Json to_json(const families::FamilyMember& f, infection::Engine& engine) {
  Json j;
  j["expression"] = dsl::expr_text(f.expr);
  j["eta"] = f.eta.str();
  j["depth"] = f.depth;
  j["knot"] = to_json(f.knot);
  j["rho_vector"] = to_json(engine.rho_vector(f.expr));
  j["tags"] = to_json(f.tags);
  j["vanishing"] = to_json(infection::check_vanishing(engine, f.expr));
  return j;
}

}  // namespace rhokit::json_io
