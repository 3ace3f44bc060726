#pragma once

#include <string_view>

#include "rpsym/expr.hpp"

namespace rpsym {

/// Parses the expression grammar
///
///   expr   := term (("+" | "-") term)*
///   term   := factor (("*" | "/") factor)*
///   factor := "-" factor | base ("^" integer)?
///   base   := integer | coordinate | "(" expr ")"
///
/// over the given coordinates. Throws ParseError (with byte position) on
/// syntax errors, unknown identifiers and division by zero.
Expr parse_expr(std::string_view text, const Coordinates& coords);

}  // namespace rpsym
