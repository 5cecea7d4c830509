#include "fibdiff/sequence.hpp"

#include "fibdiff/errors.hpp"

namespace fibdiff {

std::string role_name(FamilyRole role) {
  switch (role) {
    case FamilyRole::Fibonacci: return "fibonacci";
    case FamilyRole::Lucas: return "lucas";
    case FamilyRole::LucasU: return "lucasU";
    case FamilyRole::LucasV: return "lucasV";
    case FamilyRole::Gibonacci: return "gibonacci";
    case FamilyRole::Horadam: return "horadam";
  }
  return "?";
}

FamilyRole parse_role(const std::string& text) {
  if (text == "fibonacci" || text == "F") return FamilyRole::Fibonacci;
  if (text == "lucas" || text == "L") return FamilyRole::Lucas;
  if (text == "lucasU" || text == "U") return FamilyRole::LucasU;
  if (text == "lucasV" || text == "V") return FamilyRole::LucasV;
  if (text == "gibonacci") return FamilyRole::Gibonacci;
  if (text == "horadam") return FamilyRole::Horadam;
  throw PreconditionError("unknown family role '" + text + "'");
}

bool role_is_symbolic(FamilyRole role) {
  return role == FamilyRole::Gibonacci || role == FamilyRole::Horadam;
}

SequenceSpec SequenceSpec::make(const std::string& name, FamilyRole role, const Rational& p,
                                const Rational& q, const QuadField& field) {
  if (p.is_zero() || q.is_zero()) throw PreconditionError("family " + name + ": p and q must be nonzero");
  bool golden = p == Rational(1) && q == Rational(-1);
  if ((role == FamilyRole::Fibonacci || role == FamilyRole::Lucas || role == FamilyRole::Gibonacci) &&
      !golden) {
    throw PreconditionError("family " + name + " (" + role_name(role) +
                            ") requires p = 1, q = -1");
  }
  SequenceSpec s{name, role, p, q, SeedPoly(field), SeedPoly(field)};
  switch (role) {
    case FamilyRole::Fibonacci:
    case FamilyRole::LucasU:
      s.seed1 = SeedPoly(field, Rational(1));
      break;
    case FamilyRole::Lucas:
      s.seed0 = SeedPoly(field, Rational(2));
      s.seed1 = SeedPoly(field, Rational(1));
      break;
    case FamilyRole::LucasV:
      s.seed0 = SeedPoly(field, Rational(2));
      s.seed1 = SeedPoly(field, p);
      break;
    case FamilyRole::Gibonacci:
    case FamilyRole::Horadam:
      s.seed0 = SeedPoly::symbol(field, seed_symbol(name, 0));
      s.seed1 = SeedPoly::symbol(field, seed_symbol(name, 1));
      break;
  }
  return s;
}

TermTable::TermTable(SequenceSpec spec) : spec_(std::move(spec)) {
  forward_.push_back(spec_.seed0);
  forward_.push_back(spec_.seed1);
  backward_.push_back(spec_.seed0);
}

const SeedPoly& TermTable::at(long j) {
  if (j >= 0) {
    while (static_cast<long>(forward_.size()) <= j) {
      std::size_t n = forward_.size();
      forward_.push_back(forward_[n - 1] * spec_.p - forward_[n - 2] * spec_.q);
    }
    return forward_[static_cast<std::size_t>(j)];
  }
  long need = -j;
  Rational inv_q = spec_.q.inverse();
  while (static_cast<long>(backward_.size()) <= need) {
    // W_{-m} = (p W_{-m+1} - W_{-m+2}) / q
    std::size_t m = backward_.size();
    const SeedPoly& w1 = backward_[m - 1];
    const SeedPoly& w2 = m >= 2 ? backward_[m - 2] : forward_[1];
    backward_.push_back((w1 * spec_.p - w2) * inv_q);
  }
  return backward_[static_cast<std::size_t>(need)];
}

SeedPoly term_at(const SequenceSpec& spec, long j) {
  TermTable t(spec);
  return t.at(j);
}

namespace {

// sqrtD as a field element: the radical, or the rational root when D is a square.
QuadExt root_of(const SequenceSpec& spec) {
  const QuadField& f = spec.field();
  if (f.has_radical()) return QuadExt::radical(f);
  Rational d = spec.p * spec.p - Rational(4) * spec.q;
  if (d.sign() <= 0 || !d.is_square()) {
    throw ArithmeticError("Binet form needs p^2 - 4q > 0 (got " + d.str() + ")");
  }
  BigInt n, m;
  mpz_sqrt(n.get_mpz_t(), d.numerator().get_mpz_t());
  mpz_sqrt(m.get_mpz_t(), d.denominator().get_mpz_t());
  return QuadExt(f, Rational(n, m));
}

}  // namespace

BinetPair binet_coefficients(const SequenceSpec& spec) {
  const QuadField& f = spec.field();
  QuadExt root = root_of(spec);
  Rational half(BigInt(1), BigInt(2));
  QuadExt tau = (QuadExt(f, spec.p) + root) * half;
  QuadExt sigma = (QuadExt(f, spec.p) - root) * half;
  QuadExt inv_rad = root.inverse();
  // A = (W1 - W0 sigma)/sqrtD, B = (W0 tau - W1)/sqrtD
  SeedPoly A = (spec.seed1 - spec.seed0 * sigma) * inv_rad;
  SeedPoly B = (spec.seed0 * tau - spec.seed1) * inv_rad;
  return {A, B};
}

SeedPoly lemma_combination(const SequenceSpec& spec, long j) {
  const QuadField& f = spec.field();
  QuadExt root = root_of(spec);
  Rational half(BigInt(1), BigInt(2));
  TermTable t(spec);
  SeedPoly direct = (t.at(j + 1) - t.at(j - 1) * spec.q) * root.inverse();
  BinetPair ab = binet_coefficients(spec);
  QuadExt tau = (QuadExt(f, spec.p) + root) * half;
  QuadExt sigma = (QuadExt(f, spec.p) - root) * half;
  SeedPoly via_binet = ab.A * tau.pow(j) - ab.B * sigma.pow(j);
  if (!(direct == via_binet)) {
    throw ArithmeticError("lemma combination mismatch for " + spec.name + " at j=" + std::to_string(j));
  }
  return direct;
}

}  // namespace fibdiff
