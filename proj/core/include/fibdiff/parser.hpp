#pragma once

#include <string_view>

#include "fibdiff/identity.hpp"

namespace fibdiff {

// Grammar: identity := expr "=" expr. Families must be declared in ctx.
Identity parse_identity(std::string_view text, const Context& ctx = Context::default_table(),
                        std::vector<Constraint> constraints = {}, std::string provenance = {});
Expr parse_expr(std::string_view text, const Context& ctx = Context::default_table());
Sub parse_subscript(std::string_view text);

// Negation with the parser's normal form: constants and leading coefficients absorb the sign.
Expr negate(const Expr& e);

}  // namespace fibdiff
