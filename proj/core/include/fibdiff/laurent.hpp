#pragma once

#include <map>
#include <string>
#include <vector>

#include "fibdiff/seedpoly.hpp"

namespace fibdiff {

using Exponents = std::vector<int>;

// Laurent polynomial in a fixed list of invertible variables with SeedPoly coefficients.
class LaurentPoly {
 public:
  LaurentPoly(const QuadField& field, std::size_t nvars) : field_(&field), nvars_(nvars) {}
  static LaurentPoly constant(std::size_t nvars, const SeedPoly& c);
  static LaurentPoly monomial(const Exponents& exps, const SeedPoly& c);

  const QuadField& field() const { return *field_; }
  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, SeedPoly>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Inserts a raw term without merging checks; call normalize() afterwards.
  void insert_raw(const Exponents& e, const SeedPoly& c);
  LaurentPoly normalized() const;
  LaurentPoly pow(unsigned e) const;
  // Multiplies by the monomial with the given exponents.
  LaurentPoly shifted(const Exponents& e) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const SeedPoly& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void add_term(const Exponents& e, const SeedPoly& c);
  const QuadField* field_;
  std::size_t nvars_;
  std::map<Exponents, SeedPoly> terms_;
};

}  // namespace fibdiff
