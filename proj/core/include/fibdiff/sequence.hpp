#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "fibdiff/seedpoly.hpp"

namespace fibdiff {

enum class FamilyRole { Fibonacci, Lucas, LucasU, LucasV, Gibonacci, Horadam };

std::string role_name(FamilyRole role);
FamilyRole parse_role(const std::string& text);
// Gibonacci and Horadam families carry symbolic seeds.
bool role_is_symbolic(FamilyRole role);

// A recurrence W_j = p W_{j-1} - q W_{j-2} with named seeds.
struct SequenceSpec {
  std::string name;
  FamilyRole role = FamilyRole::Fibonacci;
  Rational p{1};
  Rational q{-1};
  SeedPoly seed0;
  SeedPoly seed1;

  // Builds the spec for a declared family in the (p, q) context over the given field.
  static SequenceSpec make(const std::string& name, FamilyRole role, const Rational& p,
                           const Rational& q, const QuadField& field);
  const QuadField& field() const { return seed0.field(); }
};

SeedPoly term_at(const SequenceSpec& spec, long j);

// Memoized terms for one spec. Not synchronized; use one table per thread.
class TermTable {
 public:
  explicit TermTable(SequenceSpec spec);
  const SeedPoly& at(long j);
  const SequenceSpec& spec() const { return spec_; }

 private:
  SequenceSpec spec_;
  std::deque<SeedPoly> forward_;   // indices 0, 1, 2, ...
  std::deque<SeedPoly> backward_;  // indices 0, -1, -2, ...
};

struct BinetPair {
  SeedPoly A;
  SeedPoly B;
};

BinetPair binet_coefficients(const SequenceSpec& spec);

// (W_{j+1} - q W_{j-1}) / sqrtD, checked against A tau^j - B sigma^j.
SeedPoly lemma_combination(const SequenceSpec& spec, long j);

}  // namespace fibdiff
