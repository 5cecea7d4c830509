#pragma once

#include <map>
#include <string>
#include <vector>

#include "fibdiff/verify.hpp"

namespace fibdiff {

struct NumericOptions {
  unsigned precision = 30;  // decimal digits; relative tolerance 10^-(precision-4)
  Grid grid;
  std::vector<ParamSample> params;
  std::map<std::string, Rational> seeds;  // unbound seeds get fixed small primes
};

// Evidence only, never a proof. Flags arctan branch crossings.
VerifyReport numeric_verify(const Identity& id, const NumericOptions& opts = {});

// Compares the complex derivative of the continued family, taken by central differences,
// with the closed forms used by the transforms: the real part (q = -1) and the imaginary part (q < 0).
VerifyReport check_derivative_facts(const Context& ctx, const std::string& family, long lo, long hi,
                                    unsigned precision = 30, double tolerance = 1e-12);

// Seed values used when a numeric check needs concrete seeds.
std::map<std::string, Rational> sample_seeds(const Context& ctx, const std::set<std::string>& families,
                                             const std::map<std::string, Rational>& given = {});

}  // namespace fibdiff
