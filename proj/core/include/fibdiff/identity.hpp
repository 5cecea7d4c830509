#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibdiff/expr.hpp"
#include "fibdiff/sequence.hpp"

namespace fibdiff {

struct FamilyDecl {
  std::string name;
  FamilyRole role;
};

// Family declarations plus the shared recurrence parameters.
class Context {
 public:
  Rational p{1};
  Rational q{-1};
  std::vector<FamilyDecl> families;

  // F, L (when p = 1, q = -1), U, V, and every other capital letter as a symbolic family.
  static Context default_table(const Rational& p = Rational(1), const Rational& q = Rational(-1));

  const FamilyDecl* find(const std::string& name) const;
  void declare(const std::string& name, FamilyRole role);
  bool golden() const { return p == Rational(1) && q == Rational(-1); }
  Rational radicand() const { return p * p - Rational(4) * q; }
  bool degenerate() const { return QuadField::is_degenerate(radicand()); }
  // Field for exact evaluation: Q(sqrt D), or the rational-only field when D is a square.
  const QuadField& field() const;
  SequenceSpec spec(const std::string& name) const;
  // sqrtD, tau and sigma as field elements; rational when D is a perfect square.
  QuadExt sqrt_value() const;
  QuadExt tau_value() const;
  QuadExt sigma_value() const;
  // Name of the first family declared with the given role, if any.
  std::optional<std::string> family_with_role(FamilyRole role) const;
  FamilyRole symbolic_role() const { return golden() ? FamilyRole::Gibonacci : FamilyRole::Horadam; }
  // First unused name among base, base2, base3, ...
  std::string fresh_family(const std::string& base, const std::set<std::string>& taken = {}) const;
  std::string str() const;
};

struct Constraint {
  enum class Kind { Even, Odd, Ge, Gt, Le, Lt, Ne, RealValid, Text };
  Kind kind = Kind::Text;
  std::string index;
  long value = 0;
  std::string text;

  static Constraint parse(const std::string& text);
  bool has_index() const { return kind != Kind::RealValid && kind != Kind::Text; }
  bool admits(long v) const;
  // +1 for even, -1 for odd, 0 if no parity restriction.
  int parity() const;
  std::string str() const;
};

bool operator==(const Constraint& a, const Constraint& b);

struct Identity {
  Expr lhs;
  Expr rhs;
  std::set<std::string> free_indices;
  std::vector<Constraint> constraints;
  std::string provenance;
  Context ctx;

  static Identity make(Expr lhs, Expr rhs, Context ctx, std::vector<Constraint> constraints = {},
                       std::string provenance = {});
  bool has_constraint(Constraint::Kind k) const;
  // Replaces both sides, recomputing free indices and keeping applicable constraints.
  Identity with_sides(Expr lhs, Expr rhs) const;
};

// Structural equality of the two sides and the free index set.
bool structurally_equal(const Identity& a, const Identity& b);

std::set<std::string> free_indices(const Identity& id);
Identity substitute_index(const Identity& id, const std::string& var, const Sub& replacement);

}  // namespace fibdiff
