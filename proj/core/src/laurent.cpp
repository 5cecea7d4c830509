#include "fibdiff/laurent.hpp"

#include "fibdiff/errors.hpp"

namespace fibdiff {

LaurentPoly LaurentPoly::constant(std::size_t nvars, const SeedPoly& c) {
  LaurentPoly p(c.field(), nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponents& exps, const SeedPoly& c) {
  LaurentPoly p(c.field(), exps.size());
  p.add_term(exps, c);
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  for (int e : terms_.begin()->first) {
    if (e != 0) return false;
  }
  return true;
}

void LaurentPoly::add_term(const Exponents& e, const SeedPoly& c) {
  if (e.size() != nvars_) throw ArithmeticError("exponent vector has wrong arity");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void LaurentPoly::insert_raw(const Exponents& e, const SeedPoly& c) {
  if (e.size() != nvars_) throw ArithmeticError("exponent vector has wrong arity");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
}

LaurentPoly LaurentPoly::normalized() const {
  LaurentPoly out(*field_, nvars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result = constant(nvars_, SeedPoly(*field_, Rational(1)));
  LaurentPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(const Exponents& shift) const {
  LaurentPoly out(*field_, nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    for (std::size_t i = 0; i < nvars_; ++i) ne[i] += shift[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(*field_, nvars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.nvars_ != nvars_) throw ArithmeticError("Laurent arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.nvars_ != nvars_) throw ArithmeticError("Laurent arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const SeedPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  LaurentPoly out(*field_, nvars_);
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return *this = std::move(out);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars_ != b.nvars_) throw ArithmeticError("Laurent arity mismatch");
  LaurentPoly out(*a.field_, a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string LaurentPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "v" + std::to_string(i);
      if (e[i] != 1) mono += "^" + (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
    }
    std::string coeff = c.str();
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = mono;
    } else {
      term = "(" + coeff + ")*" + mono;
    }
    out += (first ? "" : " + ") + term;
    first = false;
  }
  return out;
}

}  // namespace fibdiff
