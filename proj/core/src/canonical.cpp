#include "fibdiff/canonical.hpp"

#include <sstream>

#include "fibdiff/errors.hpp"
#include "fibdiff/printer.hpp"

namespace fibdiff {

namespace {

constexpr long kMaxExpandedTerms = 100000;

struct Frac {
  LaurentPoly num;
  LaurentPoly den;
};

class Expander {
 public:
  Expander(const Context& ctx, std::vector<std::string> vars)
      : ctx_(ctx), field_(ctx.field()), vars_(std::move(vars)), n_(vars_.size()) {
    zvar_ = !(ctx.q == Rational(1) || ctx.q == Rational(-1));
    std::size_t next = n_;
    z_base_ = next;
    if (zvar_) next += n_;
    s_base_ = next;
    next += n_;
    k_base_ = next;
    nv_ = next + n_;
    tau_ = ctx.tau_value();
    sigma_ = ctx.sigma_value();
  }

  std::size_t nvars() const { return nv_; }
  std::size_t s_base() const { return s_base_; }
  const std::vector<std::string>& cleared() const { return cleared_; }

  std::vector<std::string> names() const {
    std::vector<std::string> out(nv_);
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = "x_" + vars_[i];
      if (zvar_) out[z_base_ + i] = "z_" + vars_[i];
      out[s_base_ + i] = "s_" + vars_[i];
      out[k_base_ + i] = "n_" + vars_[i];
    }
    return out;
  }

  LaurentPoly constant(const QuadExt& c) const { return LaurentPoly::constant(nv_, SeedPoly(c)); }
  LaurentPoly constant(const Rational& c) const { return LaurentPoly::constant(nv_, SeedPoly(field_, c)); }

  Frac frac(LaurentPoly p) const { return {std::move(p), constant(Rational(1))}; }

  Frac expand(const Expr& e) {
    switch (e.kind()) {
      case Kind::Const: return frac(constant(e.value()));
      case Kind::SqrtD: return frac(constant(ctx_.sqrt_value()));
      case Kind::Param: return frac(constant(e.name() == "p" ? ctx_.p : ctx_.q));
      case Kind::Seq: return frac(seq(e.name(), e.sub()));
      case Kind::TauPow: return frac(tau_part(affine(e.sub())));
      case Kind::SigmaPow: return frac(sigma_part(affine(e.sub())));
      case Kind::MinusOnePow: return frac(sign_part(affine(e.sub())));
      case Kind::Index: {
        Affine a = affine(e.sub());
        LaurentPoly p = constant(Rational(a.constant));
        for (std::size_t i = 0; i < n_; ++i) {
          long c = a.coeff(vars_[i]);
          if (c == 0) continue;
          Exponents ex(nv_, 0);
          ex[k_base_ + i] = 1;
          p += LaurentPoly::monomial(ex, SeedPoly(field_, Rational(c)));
        }
        return frac(p);
      }
      case Kind::Add: {
        Frac acc = frac(LaurentPoly(field_, nv_));
        for (const auto& a : e.args()) acc = add(acc, expand(a));
        return acc;
      }
      case Kind::Mul: {
        Frac acc = frac(constant(Rational(1)));
        for (const auto& a : e.args()) {
          Frac f = expand(a);
          acc = {acc.num * f.num, acc.den * f.den};
        }
        return acc;
      }
      case Kind::Neg: {
        Frac f = expand(e.arg(0));
        return {-f.num, f.den};
      }
      case Kind::Div: {
        Frac n = expand(e.arg(0));
        Frac d = expand(e.arg(1));
        return divide(n, d, e.arg(1));
      }
      case Kind::Pow: return power(e);
      case Kind::Binom: {
        auto top = e.sub().as_constant();
        auto bottom = e.sub2().as_constant();
        if (!top || !bottom) throw UnsupportedForProof("binomial coefficient with symbolic arguments");
        return frac(constant(binomial(*top, *bottom)));
      }
      case Kind::Sum: {
        auto lo = e.sub().as_constant();
        auto hi = e.sub2().as_constant();
        if (!lo || !hi) throw UnsupportedForProof("sum with symbolic bounds");
        if (*hi - *lo > kMaxExpandedTerms) throw UnsupportedForProof("sum too long to expand");
        Frac acc = frac(LaurentPoly(field_, nv_));
        for (long j = *lo; j <= *hi; ++j) acc = add(acc, expand(substitute_index(e.arg(0), e.name(), Sub(j))));
        return acc;
      }
      case Kind::Arctan: throw UnsupportedForProof("arctan is not algebraic");
      default: throw UnsupportedForProof("transcendental marker in the identity");
    }
  }

 private:
  Frac add(const Frac& a, const Frac& b) const {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }

  Frac divide(const Frac& n, const Frac& d, const Expr& shown) {
    if (d.num.is_zero()) throw PreconditionError("denominator " + print_expr(shown) + " vanishes identically");
    if (!d.num.is_constant()) cleared_.push_back(print_expr(shown, {ctx_.golden(), false}));
    return {n.num * d.den, n.den * d.num};
  }

  Frac power(const Expr& e) {
    const Expr& base = e.arg(0);
    if (auto c = e.sub().as_constant()) {
      Frac b = expand(base);
      if (*c >= 0) return {b.num.pow(static_cast<unsigned>(*c)), b.den.pow(static_cast<unsigned>(*c))};
      if (b.num.is_zero()) throw PreconditionError("negative power of zero");
      if (!b.num.is_constant()) cleared_.push_back(print_expr(base, {ctx_.golden(), false}));
      return {b.den.pow(static_cast<unsigned>(-*c)), b.num.pow(static_cast<unsigned>(-*c))};
    }
    Affine a = affine(e.sub());
    std::optional<Rational> value;
    if (base.is_const()) value = base.value();
    if (base.kind() == Kind::Param) value = base.name() == "p" ? ctx_.p : ctx_.q;
    if (value) {
      if (*value == Rational(1)) return frac(constant(Rational(1)));
      if (*value == Rational(-1)) return frac(sign_part(a));
      if (*value == ctx_.q) return frac(q_part(a));
    }
    throw UnsupportedForProof("power with a symbolic exponent: " + print_expr(e, {ctx_.golden(), true}));
  }

  Affine affine(const Sub& s) const {
    auto a = s.affine();
    if (!a) throw UnsupportedForProof("non-affine subscript " + s.str());
    for (const auto& [v, c] : a->coeffs) {
      if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) {
        throw UnsupportedForProof("subscript " + s.str() + " uses unbound index " + v);
      }
    }
    return *a;
  }

  static int narrow(long c) {
    if (c > 1000000 || c < -1000000) throw UnsupportedForProof("index coefficient too large");
    return static_cast<int>(c);
  }

  LaurentPoly tau_part(const Affine& a) const {
    Exponents ex(nv_, 0);
    for (std::size_t i = 0; i < n_; ++i) ex[i] = narrow(a.coeff(vars_[i]));
    return LaurentPoly::monomial(ex, SeedPoly(tau_.pow(a.constant)));
  }

  // q^h with the free part in z (or the parity sign when q = -1).
  LaurentPoly q_part(const Affine& a) const {
    Exponents ex(nv_, 0);
    add_q_exponents(a, ex);
    return LaurentPoly::monomial(ex, SeedPoly(field_, ctx_.q.pow(a.constant)));
  }

  void add_q_exponents(const Affine& a, Exponents& ex) const {
    for (std::size_t i = 0; i < n_; ++i) {
      int c = narrow(a.coeff(vars_[i]));
      if (zvar_) {
        ex[z_base_ + i] += c;
      } else if (ctx_.q == Rational(-1)) {
        ex[s_base_ + i] += c;
      }
    }
  }

  // sigma^h = q^h tau^{-h}
  LaurentPoly sigma_part(const Affine& a) const {
    Exponents ex(nv_, 0);
    for (std::size_t i = 0; i < n_; ++i) ex[i] = -narrow(a.coeff(vars_[i]));
    add_q_exponents(a, ex);
    return LaurentPoly::monomial(ex, SeedPoly(sigma_.pow(a.constant)));
  }

  LaurentPoly sign_part(const Affine& a) const {
    Exponents ex(nv_, 0);
    for (std::size_t i = 0; i < n_; ++i) ex[s_base_ + i] = narrow(a.coeff(vars_[i]));
    return LaurentPoly::monomial(ex, SeedPoly(field_, Rational(a.constant % 2 == 0 ? 1 : -1)));
  }

  LaurentPoly seq(const std::string& fam, const Sub& h) {
    auto it = binet_.find(fam);
    if (it == binet_.end()) it = binet_.emplace(fam, binet_coefficients(ctx_.spec(fam))).first;
    Affine a = affine(h);
    LaurentPoly t = tau_part(a);
    LaurentPoly s = sigma_part(a);
    LaurentPoly out(field_, nv_);
    for (const auto& [e, c] : t.terms()) out += LaurentPoly::monomial(e, c * it->second.A);
    for (const auto& [e, c] : s.terms()) out += LaurentPoly::monomial(e, c * it->second.B);
    return out;
  }

  const Context& ctx_;
  const QuadField& field_;
  std::vector<std::string> vars_;
  std::size_t n_;
  bool zvar_ = false;
  std::size_t z_base_ = 0, s_base_ = 0, k_base_ = 0, nv_ = 0;
  QuadExt tau_{QuadField::rational_only()};
  QuadExt sigma_{QuadField::rational_only()};
  std::map<std::string, BinetPair> binet_;
  std::vector<std::string> cleared_;
};

// Indices named in formal keep their (-1)-powers as a free symbol instead of a parity sign.
std::vector<ParityCase> split_cases(const LaurentPoly& p, std::size_t s_base, const std::vector<std::string>& vars,
                                    const std::vector<Constraint>& constraints, const std::string& formal = {}) {
  std::size_t n = vars.size();
  std::vector<std::size_t> relevant;
  for (std::size_t i = 0; i < n; ++i) {
    if (vars[i] == formal) continue;
    for (const auto& [e, c] : p.terms()) {
      if (e[s_base + i] % 2 != 0) {
        relevant.push_back(i);
        break;
      }
    }
  }
  std::vector<ParityCase> out;
  for (unsigned mask = 0; mask < (1u << relevant.size()); ++mask) {
    std::map<std::string, int> signs;
    bool admissible = true;
    for (std::size_t r = 0; r < relevant.size(); ++r) {
      const std::string& v = vars[relevant[r]];
      int sign = (mask >> r) & 1u ? -1 : 1;
      for (const auto& c : constraints) {
        if (c.index == v && c.parity() != 0 && c.parity() != sign) admissible = false;
      }
      signs[v] = sign;
    }
    if (!admissible) continue;
    LaurentPoly q(p.field(), p.nvars());
    for (const auto& [e, c] : p.terms()) {
      Exponents ne = e;
      bool negative = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (vars[i] == formal) continue;
        int& x = ne[s_base + i];
        if (x % 2 != 0) {
          auto it = signs.find(vars[i]);
          if (it != signs.end() && it->second < 0) negative = !negative;
        }
        x = 0;
      }
      q.insert_raw(ne, negative ? -c : c);
    }
    out.push_back({signs, q.normalized()});
  }
  return out;
}

std::vector<std::string> sorted_vars(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

struct Expanded {
  Frac frac;
  std::vector<std::string> names;
  std::size_t s_base;
  std::vector<std::string> cleared;
};

Expanded expand_with(const Expr& e, const Context& ctx, const std::vector<std::string>& vars) {
  Expander x(ctx, vars);
  Frac f = x.expand(e);
  return {f, x.names(), x.s_base(), x.cleared()};
}

std::string render(const LaurentPoly& p, const std::vector<std::string>& names) {
  return p.is_zero() ? "0" : p.str(names);
}

}  // namespace

bool CanonicalForm::is_zero() const {
  for (const auto& c : cases) {
    if (!c.poly.is_zero()) return false;
  }
  return true;
}

std::string CanonicalForm::str() const {
  std::ostringstream os;
  for (const auto& c : cases) {
    os << "[";
    bool first = true;
    for (const auto& [v, s] : c.signs) {
      os << (first ? "" : ", ") << v << (s > 0 ? " even" : " odd");
      first = false;
    }
    os << "] " << render(c.poly, variables) << "\n";
  }
  return os.str();
}

CanonicalForm canonicalize(const Expr& e, const Context& ctx, const std::vector<Constraint>& constraints) {
  auto vars = sorted_vars(free_vars(e));
  Expanded x = expand_with(e, ctx, vars);
  CanonicalForm out{x.names, split_cases(x.frac.num, x.s_base, vars, constraints), x.frac.den, x.cleared};
  return out;
}

bool provable_shape(const Identity& id, std::string* why) {
  try {
    auto vars = sorted_vars(id.free_indices);
    expand_with(ex::sub(id.lhs, id.rhs), id.ctx, vars);
    return true;
  } catch (const UnsupportedForProof& e) {
    if (why) *why = e.what();
    return false;
  }
}

ProofVerdict prove_identity(const Identity& id) {
  auto vars = sorted_vars(id.free_indices);
  Expanded x = expand_with(ex::sub(id.lhs, id.rhs), id.ctx, vars);
  ProofVerdict v;
  v.proved = true;
  v.side_conditions = x.cleared;
  for (auto& c : split_cases(x.frac.num, x.s_base, vars, id.constraints)) {
    CaseOutcome o;
    o.signs = c.signs;
    o.holds = c.poly.is_zero();
    if (!o.holds) {
      o.residue = render(c.poly, x.names);
      if (!x.frac.den.is_constant()) o.residue = "(" + o.residue + ")/(" + render(x.frac.den, x.names) + ")";
      if (v.proved) v.residue = o.residue;
      v.proved = false;
    }
    v.cases.push_back(std::move(o));
  }
  if (v.cases.empty()) throw PreconditionError("no parity case is admissible under the constraints");
  return v;
}

bool function_form_holds(const Identity& id, const std::string& index) {
  for (const auto& c : id.constraints) {
    if (c.index == index && c.parity() != 0) return false;
  }
  auto vars = sorted_vars(id.free_indices);
  Expanded x = expand_with(ex::sub(id.lhs, id.rhs), id.ctx, vars);
  auto cases = split_cases(x.frac.num, x.s_base, vars, id.constraints, index);
  if (cases.empty()) return false;
  for (const auto& c : cases) {
    if (!c.poly.is_zero()) return false;
  }
  return true;
}

std::string ProofVerdict::str() const {
  std::ostringstream os;
  os << (proved ? "proved" : "refuted");
  for (const auto& c : cases) {
    if (c.signs.empty() && cases.size() == 1) break;
    os << "\n  case";
    for (const auto& [v, s] : c.signs) os << " " << v << (s > 0 ? " even" : " odd");
    os << ": " << (c.holds ? "holds" : "residue " + c.residue);
  }
  if (!proved && cases.size() == 1) os << "\n  residue: " << residue;
  for (const auto& s : side_conditions) os << "\n  provided " << s << " != 0";
  return os.str();
}

namespace {

// Finds lambda with a == lambda * b, if any.
bool proportional(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto& [e, cb] = *b.terms().begin();
  auto it = a.terms().find(e);
  if (it == a.terms().end()) return false;
  const auto& [m, qb] = *cb.terms().begin();
  auto jt = it->second.terms().find(m);
  if (jt == it->second.terms().end()) return false;
  QuadExt lambda = jt->second / qb;
  LaurentPoly scaled(b.field(), b.nvars());
  for (const auto& [ee, c] : b.terms()) scaled += LaurentPoly::monomial(ee, c * lambda);
  return scaled == a;
}

}  // namespace

bool equivalent(const Identity& a, const Identity& b) {
  if (!prove_identity(a).proved || !prove_identity(b).proved) return false;
  std::set<std::string> all = a.free_indices;
  all.insert(b.free_indices.begin(), b.free_indices.end());
  auto vars = sorted_vars(all);
  auto side = [&](const Expr& e, const Context& ctx) { return expand_with(e, ctx, vars).frac; };
  Frac al = side(a.lhs, a.ctx), bl = side(b.lhs, b.ctx), br = side(b.rhs, b.ctx);
  auto match = [&](const Frac& x, const Frac& y) {
    auto ca = split_cases(x.num * y.den, 0, {}, {});
    auto cb = split_cases(y.num * x.den, 0, {}, {});
    return proportional(ca.front().poly, cb.front().poly);
  };
  return match(al, bl) || match(al, br);
}

}  // namespace fibdiff
