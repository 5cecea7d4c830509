#include "fibdiff/subscript.hpp"

#include <algorithm>

#include "fibdiff/errors.hpp"

namespace fibdiff {

namespace {

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("subscript overflow");
  return r;
}

long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("subscript overflow");
  return r;
}

std::optional<long> int_pow(long base, long e) {
  if (e < 0) return std::nullopt;
  long r = 1;
  for (long i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

SubMono mono_mul(const SubMono& a, const SubMono& b) {
  SubMono out;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    int c = (i == a.end()) ? 1 : (j == b.end() ? -1 : compare(i->first, j->first));
    if (c < 0) {
      out.push_back(*i++);
    } else if (c > 0) {
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

int compare(const SubAtom& a, const SubAtom& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) return a.var.compare(b.var) < 0 ? -1 : (a.var == b.var ? 0 : 1);
  if (a.base != b.base) return a.base < b.base ? -1 : 1;
  return compare(*a.exponent, *b.exponent);
}

bool SubMonoLess::operator()(const SubMono& a, const SubMono& b) const {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a[i].first, b[i].first);
    if (c != 0) return c < 0;
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
  }
  return a.size() < b.size();
}

Sub::Sub(long c) {
  if (c != 0) terms_.emplace(SubMono{}, c);
}

Sub Sub::var(const std::string& name) {
  Sub s;
  s.terms_.emplace(SubMono{{SubAtom{name, 0, nullptr}, 1}}, 1);
  return s;
}

Sub Sub::power(long base, const Sub& exponent) {
  if (base < 2) throw PreconditionError("exponential base in a subscript must be an integer >= 2");
  if (auto c = exponent.as_constant()) {
    auto v = int_pow(base, *c);
    if (!v) throw PreconditionError("negative constant exponent makes the subscript non-integer");
    return Sub(*v);
  }
  Sub s;
  s.terms_.emplace(SubMono{{SubAtom{"", base, std::make_shared<const Sub>(exponent)}, 1}}, 1);
  return s;
}

Sub Sub::from_affine(const Affine& a) {
  Sub s(a.constant);
  for (const auto& [v, c] : a.coeffs) s += Sub(c) * Sub::var(v);
  return s;
}

void Sub::add(const SubMono& m, long c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

bool Sub::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::optional<long> Sub::as_constant() const {
  if (terms_.empty()) return 0L;
  if (is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

std::optional<std::string> Sub::as_var() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (c != 1 || m.size() != 1 || m[0].second != 1 || !m[0].first.is_var()) return std::nullopt;
  return m[0].first.var;
}

std::optional<Affine> Sub::affine() const {
  Affine a;
  for (const auto& [m, c] : terms_) {
    if (m.empty()) {
      a.constant = c;
    } else if (m.size() == 1 && m[0].second == 1 && m[0].first.is_var()) {
      a.coeffs[m[0].first.var] = c;
    } else {
      return std::nullopt;
    }
  }
  return a;
}

std::set<std::string> Sub::vars() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [atom, e] : m) {
      if (atom.is_var()) {
        out.insert(atom.var);
      } else {
        auto inner = atom.exponent->vars();
        out.insert(inner.begin(), inner.end());
      }
    }
  }
  return out;
}

bool Sub::contains(const std::string& v) const { return vars().count(v) > 0; }

bool Sub::in_exponent(const std::string& v) const {
  for (const auto& [m, c] : terms_) {
    for (const auto& [atom, e] : m) {
      if (!atom.is_var() && atom.exponent->contains(v)) return true;
    }
  }
  return false;
}

bool Sub::has_exponential() const {
  for (const auto& [m, c] : terms_) {
    for (const auto& [atom, e] : m) {
      if (!atom.is_var()) return true;
    }
  }
  return false;
}

Sub Sub::substitute(const std::string& v, const Sub& replacement) const {
  return substitute(std::map<std::string, Sub>{{v, replacement}});
}

Sub Sub::substitute(const std::map<std::string, Sub>& bindings) const {
  Sub out;
  for (const auto& [m, c] : terms_) {
    Sub term(c);
    for (const auto& [atom, e] : m) {
      Sub a;
      if (atom.is_var()) {
        auto it = bindings.find(atom.var);
        a = it == bindings.end() ? Sub::var(atom.var) : it->second;
      } else {
        a = Sub::power(atom.base, atom.exponent->substitute(bindings));
      }
      for (int i = 0; i < e; ++i) term = term * a;
    }
    out += term;
  }
  return out;
}

Sub Sub::derivative(const std::string& v) const {
  if (in_exponent(v)) {
    throw PreconditionError("index " + v + " occurs in an exponential exponent of a subscript");
  }
  Sub out;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].first.is_var() || m[i].first.var != v) continue;
      SubMono rest = m;
      long coeff = checked_mul(c, m[i].second);
      if (--rest[i].second == 0) rest.erase(rest.begin() + static_cast<long>(i));
      out.add(rest, coeff);
    }
  }
  return out;
}

std::optional<long> Sub::eval(const std::map<std::string, long>& env) const {
  long total = 0;
  for (const auto& [m, c] : terms_) {
    long term = c;
    for (const auto& [atom, e] : m) {
      long a;
      if (atom.is_var()) {
        auto it = env.find(atom.var);
        if (it == env.end()) throw PreconditionError("unbound index " + atom.var);
        a = it->second;
      } else {
        auto ex = atom.exponent->eval(env);
        if (!ex) return std::nullopt;
        auto p = int_pow(atom.base, *ex);
        if (!p) return std::nullopt;
        a = *p;
      }
      for (int i = 0; i < e; ++i) term = checked_mul(term, a);
    }
    total = checked_add(total, term);
  }
  return total;
}

Sub Sub::operator-() const {
  Sub out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Sub& Sub::operator+=(const Sub& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Sub& Sub::operator-=(const Sub& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Sub operator*(const Sub& a, const Sub& b) {
  Sub out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add(mono_mul(ma, mb), checked_mul(ca, cb));
  }
  return out;
}

bool operator==(const Sub& a, const Sub& b) { return compare(a, b) == 0; }

int compare(const Sub& a, const Sub& b) {
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  SubMonoLess less;
  for (; i != a.terms_.end() && j != b.terms_.end(); ++i, ++j) {
    if (less(i->first, j->first)) return -1;
    if (less(j->first, i->first)) return 1;
    if (i->second != j->second) return i->second < j->second ? -1 : 1;
  }
  if (i == a.terms_.end() && j == b.terms_.end()) return 0;
  return i == a.terms_.end() ? -1 : 1;
}

namespace {

std::string atom_str(const SubAtom& atom) {
  if (atom.is_var()) return atom.var;
  const Sub& e = *atom.exponent;
  std::string ex = e.as_var() ? *e.as_var() : "(" + e.str() + ")";
  return std::to_string(atom.base) + "^" + ex;
}

std::string mono_str(const SubMono& m, long c) {
  long mag = c < 0 ? -c : c;
  if (m.empty()) return std::to_string(mag);
  if (m.size() == 1 && m[0].second == 1 && m[0].first.is_var()) {
    return (mag == 1 ? "" : std::to_string(mag)) + m[0].first.var;
  }
  std::string out = mag == 1 ? "" : std::to_string(mag);
  for (const auto& [atom, e] : m) {
    for (int i = 0; i < e; ++i) {
      if (!out.empty()) out += "*";
      out += atom_str(atom);
    }
  }
  return out;
}

}  // namespace

std::string Sub::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<SubMono, long>> pos, neg;
  std::optional<long> constant;
  for (const auto& [m, c] : terms_) {
    if (m.empty()) {
      constant = c;
    } else if (c > 0) {
      pos.emplace_back(m, c);
    } else {
      neg.emplace_back(m, c);
    }
  }
  std::string out;
  auto emit = [&](const SubMono& m, long c) {
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + mono_str(m, c);
    } else {
      out += (c < 0 ? "-" : "+") + mono_str(m, c);
    }
  };
  for (const auto& [m, c] : pos) emit(m, c);
  for (const auto& [m, c] : neg) emit(m, c);
  if (constant) emit(SubMono{}, *constant);
  return out;
}

}  // namespace fibdiff
