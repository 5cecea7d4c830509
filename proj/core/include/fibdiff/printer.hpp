#pragma once

#include <string>

#include "fibdiff/identity.hpp"

namespace fibdiff {

struct PrintOptions {
  bool golden = true;          // alpha/beta instead of tau/sigma
  bool allow_markers = false;  // derivative markers, pi, i, ln
};

std::string print_expr(const Expr& e, const PrintOptions& opts = {});
// Errors if derivative markers are present.
std::string print_identity(const Identity& id);
// Prints a form that may still carry markers (for derivation traces).
std::string print_form(const Expr& lhs, const Expr& rhs, const Context& ctx);

// The subscript polynomial rebuilt as an expression over Index atoms.
Expr sub_to_expr(const Sub& s);

}  // namespace fibdiff
