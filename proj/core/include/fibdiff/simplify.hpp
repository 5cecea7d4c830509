#pragma once

#include <optional>
#include <vector>

#include "fibdiff/identity.hpp"

namespace fibdiff {

struct SimplifyOptions {
  // F[h+1]+F[h-1] -> L[h], L[h+1]+L[h-1] -> 5F[h], L[m]F[n]+L[n]F[m] -> 2F[m+n], L[h]F[h] -> F[2h].
  bool identity_rules = true;
  // Sort terms and factors into a canonical order instead of first-appearance order.
  bool sort = false;
};

Expr simplify_expr(const Expr& e, const Context& ctx, const SimplifyOptions& opts = {});
Identity simplify(const Identity& id, const SimplifyOptions& opts = {});

// A simplified additive term split into its constant coefficient and the remaining factor.
struct TermParts {
  QuadExt coeff;
  Expr rest;
};

std::vector<TermParts> split_terms(const Expr& simplified, const Context& ctx);
Expr build_term(const QuadExt& coeff, const Expr& rest);
Expr quad_to_expr(const QuadExt& c);
// Value of a constant expression (no indices, sequences or markers), if it is one.
std::optional<QuadExt> constant_value(const Expr& e, const Context& ctx);

// Scales both sides so the leading coefficient is 1, then clears denominators and common factors.
Identity normalize_scalars(const Identity& id, const SimplifyOptions& opts = {});

}  // namespace fibdiff
