#include "fibdiff/seedpoly.hpp"

#include <cctype>

#include "fibdiff/errors.hpp"

namespace fibdiff {

namespace {

SeedMonomial mono_mul(const SeedMonomial& a, const SeedMonomial& b) {
  SeedMonomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SeedPoly::SeedPoly(const QuadField& field, const Rational& c) : field_(&field) {
  if (!c.is_zero()) terms_.emplace(SeedMonomial{}, QuadExt(field, c));
}

SeedPoly::SeedPoly(const QuadExt& c) : field_(&c.field()) {
  if (!c.is_zero()) terms_.emplace(SeedMonomial{}, c);
}

SeedPoly SeedPoly::symbol(const QuadField& field, const std::string& name) {
  SeedPoly p(field);
  p.terms_.emplace(SeedMonomial{{name, 1}}, QuadExt(field, Rational(1)));
  return p;
}

bool SeedPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

QuadExt SeedPoly::constant() const {
  auto it = terms_.find(SeedMonomial{});
  return it == terms_.end() ? QuadExt(*field_) : it->second;
}

std::set<std::string> SeedPoly::symbols() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [s, e] : m) out.insert(s);
  }
  return out;
}

int SeedPoly::total_degree() const {
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (const auto& [s, e] : m) d += e;
    best = std::max(best, d);
  }
  return best;
}

void SeedPoly::add_term(const SeedMonomial& m, const QuadExt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QuadExt SeedPoly::substitute(const std::map<std::string, Rational>& bindings) const {
  QuadExt total(*field_);
  for (const auto& [m, c] : terms_) {
    QuadExt term = c;
    for (const auto& [s, e] : m) {
      auto it = bindings.find(s);
      if (it == bindings.end()) throw PreconditionError("unbound seed symbol " + s);
      term *= it->second.pow(e);
    }
    total += term;
  }
  return total;
}

SeedPoly SeedPoly::partial_substitute(const std::map<std::string, Rational>& bindings) const {
  SeedPoly out(*field_);
  for (const auto& [m, c] : terms_) {
    SeedMonomial rest;
    QuadExt coeff = c;
    for (const auto& [s, e] : m) {
      auto it = bindings.find(s);
      if (it == bindings.end()) {
        rest.emplace_back(s, e);
      } else {
        coeff *= it->second.pow(e);
      }
    }
    out.add_term(rest, coeff);
  }
  return out;
}

SeedPoly SeedPoly::conj() const {
  SeedPoly out(*field_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.conj());
  return out;
}

SeedPoly SeedPoly::rational_part() const {
  SeedPoly out(*field_);
  for (const auto& [m, c] : terms_) out.add_term(m, QuadExt(*field_, c.a()));
  return out;
}

SeedPoly SeedPoly::radical_part() const {
  SeedPoly out(*field_);
  for (const auto& [m, c] : terms_) out.add_term(m, QuadExt(*field_, c.b()));
  return out;
}

SeedPoly SeedPoly::pow(unsigned e) const {
  SeedPoly result(*field_, Rational(1));
  SeedPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

SeedPoly SeedPoly::operator-() const {
  SeedPoly out(*field_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

SeedPoly& SeedPoly::operator+=(const SeedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SeedPoly& SeedPoly::operator-=(const SeedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SeedPoly operator*(const SeedPoly& a, const SeedPoly& b) {
  SeedPoly out(*a.field_);
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
  }
  return out;
}

SeedPoly& SeedPoly::operator*=(const SeedPoly& o) { return *this = *this * o; }

SeedPoly& SeedPoly::operator*=(const QuadExt& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

SeedPoly& SeedPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

std::string SeedPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (const auto& [s, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += s;
      if (e != 1) mono += "^" + std::to_string(e);
    }
    std::string coeff;
    bool negative = false;
    if (c.is_rational()) {
      negative = c.a().sign() < 0;
      Rational mag = c.a().abs();
      if (!mag.is_one() || mono.empty()) coeff = mag.str();
    } else {
      coeff = "(" + c.str() + ")";
    }
    std::string term = coeff;
    if (!mono.empty()) term += (term.empty() ? "" : "*") + mono;
    if (first) {
      out += (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
    first = false;
  }
  return out;
}

std::string seed_symbol(const std::string& family, int which) {
  std::string idx = std::to_string(which);
  if (!family.empty() && std::isdigit(static_cast<unsigned char>(family.back()))) {
    return family + "_" + idx;
  }
  return family + idx;
}

}  // namespace fibdiff
