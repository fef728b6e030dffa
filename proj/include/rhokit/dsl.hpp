#pragma once
// Text syntax for knots and manifold expressions.
//
// Knots:  trefoil # mirror(figure8) # 2*twist(-2) # -trefoil # [[1,1],[0,1]]
//         genus1(a,b,c) gives [[a,b+1],[b,c]].
// Expressions:
//   trivial(2) |> infect([x1,x2], knot:"trefoil") |> sum(knot("figure8"))
//   stack(link(2, infect([x1,x2], knot:"trefoil")), link(2))
//   knot("trefoil") |> infect(x1, knot:"figure8", disk:true)

#include "rhokit/infection.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace rhokit::dsl {

/// Looks up library names before the built-in registry.
using KnotResolver = std::function<std::optional<seifert::SeifertMatrix>(const std::string&)>;

/// Throws ParseError on malformed text, PreconditionError on unknown names or
/// invalid matrices.
seifert::SeifertMatrix parse_knot(std::string_view text, const KnotResolver& resolver = {});

infection::Expr parse_expr(std::string_view text, const KnotResolver& resolver = {});

/// The knot's name when it reparses to the same matrix, else a matrix literal.
std::string knot_text(const seifert::SeifertMatrix& k);

/// Text that parses back to an equivalent expression.
std::string expr_text(const infection::Expr& e);

}  // namespace rhokit::dsl
