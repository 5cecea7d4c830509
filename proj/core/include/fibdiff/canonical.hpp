#pragma once

#include <map>
#include <string>
#include <vector>

#include "fibdiff/identity.hpp"
#include "fibdiff/laurent.hpp"

namespace fibdiff {

// One admissible assignment of parity signs and the expanded form under it.
struct ParityCase {
  std::map<std::string, int> signs;
  LaurentPoly poly;
};

// Binet expansion in x_i = tau^{k_i}, z_i = q^{k_i} (dropped when q = +-1) and the
// polynomial index values n_i = k_i; (-1)^{k_i} is split into sign cases.
struct CanonicalForm {
  std::vector<std::string> variables;
  std::vector<ParityCase> cases;
  LaurentPoly denominator;
  std::vector<std::string> cleared;  // printed denominators that were multiplied out

  bool is_zero() const;
  std::string str() const;
};

CanonicalForm canonicalize(const Expr& e, const Context& ctx, const std::vector<Constraint>& constraints = {});

struct CaseOutcome {
  std::map<std::string, int> signs;
  bool holds = false;
  std::string residue;  // canonical(lhs - rhs) when it does not vanish
};

struct ProofVerdict {
  bool proved = false;
  std::vector<CaseOutcome> cases;
  std::vector<std::string> side_conditions;
  std::string residue;  // residue of the first failing case
  std::string str() const;
};

// Throws UnsupportedForProof for sums with symbolic bounds, arctan and non-affine subscripts.
ProofVerdict prove_identity(const Identity& id);

// Holds with (-1)^index kept as exp(i pi index), i.e. for real values of index, not just integers.
// False when the index carries a parity constraint.
bool function_form_holds(const Identity& id, const std::string& index);

// Both identities proved and their sides expand to proportional Binet forms.
bool equivalent(const Identity& a, const Identity& b);

// Whether the prover accepts the identity (otherwise it belongs to verification).
bool provable_shape(const Identity& id, std::string* why = nullptr);

}  // namespace fibdiff
