#pragma once

#include <map>
#include <memory>
#include <string>

#include "fibdiff/errors.hpp"
#include "fibdiff/identity.hpp"

namespace fibdiff {

// A value num/den; den is 1 unless a division by a non-constant seed polynomial occurred.
struct ExactValue {
  SeedPoly num;
  SeedPoly den;
  std::string str() const;
};

bool same_value(const ExactValue& a, const ExactValue& b);

// Raised when a denominator evaluates to zero at an instance.
struct ZeroDenominator : Error {
  using Error::Error;
};

// Exact evaluation at integer index values. Holds per-family term caches, so one per thread.
class Evaluator {
 public:
  // Seeds listed in seed_values are replaced by the given rationals; the rest stay symbolic.
  explicit Evaluator(const Context& ctx, std::map<std::string, Rational> seed_values = {});

  ExactValue eval(const Expr& e, const std::map<std::string, long>& env);
  SeedPoly term(const std::string& family, long j);
  const Context& ctx() const { return ctx_; }

 private:
  long index(const Sub& s, const std::map<std::string, long>& env) const;
  ExactValue constant(const QuadExt& c) const;
  ExactValue normalize(SeedPoly num, SeedPoly den) const;

  Context ctx_;
  const QuadField& field_;
  std::map<std::string, Rational> seeds_;
  std::map<std::string, std::unique_ptr<TermTable>> tables_;
};

}  // namespace fibdiff
