#pragma once
// JSON encodings. Rationals are strings "p/q"; no floating point values.

#include "rhokit/families.hpp"
#include "rhokit/infection.hpp"
#include "rhokit/seifert.hpp"
#include "rhokit/solvable.hpp"

#include <json.hpp>

namespace rhokit::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const seifert::SeifertMatrix& k);
/// Accepts a bare array of rows or {"name": ..., "matrix": [...]}.
seifert::SeifertMatrix matrix_from_json(const Json& j);

Json to_json(const seifert::Rho0Value& v);
Json to_json(const seifert::Breakpoint& b);
Json to_json(const seifert::SignatureFunction& s);
Json to_json(const Polynomial& p);

Json to_json(const freegroup::SolvableElement& e);
Json to_json(const freegroup::GroupRingElement& r);
Json to_json(const freegroup::DerivedDepth& d);

Json to_json(const infection::Expr& e);
/// Inverse of to_json(Expr). Throws ParseError on malformed documents.
infection::Expr expr_from_json(const Json& j, const dsl::KnotResolver& resolver = {});
Json to_json(const infection::RhoVector& v);
Json to_json(const infection::Level& l);
Json to_json(const infection::FiltrationTags& t);
Json to_json(const infection::SliceVerdict& v);
Json to_json(const infection::VanishingReport& r);

Json to_json(const families::LibraryEntry& e);
/// JSON array of named matrices.
families::KnotLibrary library_from_json(const Json& j, const Rational& tolerance);
Json to_json(const families::Approximation& a);
Json to_json(const families::IndependenceCertificate& c);
Json to_json(const families::FamilyMember& f, infection::Engine& engine);

}  // namespace rhokit::json_io
