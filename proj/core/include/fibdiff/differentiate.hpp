#pragma once

#include <string>

#include "fibdiff/identity.hpp"

namespace fibdiff {

// Both sides of an identity after d/d(wrt), over DerivSeq markers, i, pi and ln(tau).
struct DerivedForm {
  Expr lhs;
  Expr rhs;
  std::string wrt;
  Identity source;
};

Expr differentiate_expr(const Expr& e, const std::string& k);
DerivedForm differentiate(const Identity& id, const std::string& k);

}  // namespace fibdiff
