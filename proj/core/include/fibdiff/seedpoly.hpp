#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fibdiff/quad.hpp"

namespace fibdiff {

// Sorted by symbol name; exponents are positive.
using SeedMonomial = std::vector<std::pair<std::string, int>>;

// Polynomial in symbolic seed values with coefficients in Q(sqrt D).
class SeedPoly {
 public:
  explicit SeedPoly(const QuadField& field) : field_(&field) {}
  SeedPoly(const QuadField& field, const Rational& c);
  explicit SeedPoly(const QuadExt& c);
  static SeedPoly symbol(const QuadField& field, const std::string& name);

  const QuadField& field() const { return *field_; }
  const std::map<SeedMonomial, QuadExt>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (zero if absent).
  QuadExt constant() const;
  std::set<std::string> symbols() const;
  int total_degree() const;

  QuadExt substitute(const std::map<std::string, Rational>& bindings) const;
  SeedPoly partial_substitute(const std::map<std::string, Rational>& bindings) const;
  SeedPoly conj() const;
  // Splits coefficients a + b sqrtD into the polynomials with coefficients a and b.
  SeedPoly rational_part() const;
  SeedPoly radical_part() const;
  SeedPoly pow(unsigned e) const;

  SeedPoly operator-() const;
  SeedPoly& operator+=(const SeedPoly& o);
  SeedPoly& operator-=(const SeedPoly& o);
  SeedPoly& operator*=(const SeedPoly& o);
  SeedPoly& operator*=(const QuadExt& c);
  SeedPoly& operator*=(const Rational& c);

  friend SeedPoly operator+(SeedPoly a, const SeedPoly& b) { return a += b; }
  friend SeedPoly operator-(SeedPoly a, const SeedPoly& b) { return a -= b; }
  friend SeedPoly operator*(const SeedPoly& a, const SeedPoly& b);
  friend SeedPoly operator*(SeedPoly a, const QuadExt& c) { return a *= c; }
  friend SeedPoly operator*(SeedPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const SeedPoly& a, const SeedPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const SeedPoly& a, const SeedPoly& b) { return a.terms_ < b.terms_; }

  std::string str() const;

 private:
  void add_term(const SeedMonomial& m, const QuadExt& c);
  const QuadField* field_;
  std::map<SeedMonomial, QuadExt> terms_;
};

// Deterministic seed symbol for a family: "G" -> "G0", "Z2" -> "Z2_0".
std::string seed_symbol(const std::string& family, int which);

}  // namespace fibdiff
