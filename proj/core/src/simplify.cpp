#include "fibdiff/simplify.hpp"

#include <algorithm>
#include <map>

#include "fibdiff/errors.hpp"

namespace fibdiff {

namespace {

class Simplifier {
 public:
  Simplifier(const Context& ctx, const SimplifyOptions& opts)
      : ctx_(ctx), opts_(opts), field_(ctx.field()), fib_(ctx.family_with_role(FamilyRole::Fibonacci)),
        luc_(ctx.family_with_role(FamilyRole::Lucas)) {}

  Expr run(const Expr& e) {
    Expr cur = e;
    for (int i = 0; i < 16; ++i) {
      Expr next = simp(cur);
      if (next == cur) return next;
      cur = next;
    }
    return cur;
  }

  Expr simp(const Expr& e) {
    switch (e.kind()) {
      case Kind::Const:
      case Kind::Seq:
      case Kind::Pi:
      case Kind::LnTau:
      case Kind::ImagUnit:
      case Kind::DerivSeq:
        return e;
      case Kind::TauPow:
      case Kind::SigmaPow:
        return e.sub().is_zero() ? one() : e;
      case Kind::SqrtD:
        return field_.has_radical() ? e : quad_to_expr(ctx_.sqrt_value());
      case Kind::Param:
        return ex::constant(e.name() == "p" ? ctx_.p : ctx_.q);
      case Kind::Index:
        if (auto c = e.sub().as_constant()) return ex::constant(Rational(*c));
        return e;
      case Kind::MinusOnePow:
        if (auto c = e.sub().as_constant()) return ex::constant(Rational(*c % 2 == 0 ? 1 : -1));
        return e;
      case Kind::Binom: {
        auto t = e.sub().as_constant();
        auto b = e.sub2().as_constant();
        if (t && b) return ex::constant(binomial(*t, *b));
        return e;
      }
      case Kind::Neg:
        return product({{ex::constant(Rational(-1)), Sub(1)}, {simp(e.arg(0)), Sub(1)}});
      case Kind::Mul: {
        std::vector<std::pair<Expr, Sub>> fs;
        for (const auto& a : e.args()) fs.emplace_back(simp(a), Sub(1));
        return product(fs);
      }
      case Kind::Div: {
        Expr d = simp(e.arg(1));
        if (d.is_zero()) throw ArithmeticError("division by zero in simplification");
        return product({{simp(e.arg(0)), Sub(1)}, {d, Sub(-1)}});
      }
      case Kind::Pow:
        return product({{simp(e.arg(0)), e.sub()}});
      case Kind::Add: {
        std::vector<Expr> ts;
        for (const auto& a : e.args()) ts.push_back(simp(a));
        return sum_terms(ts);
      }
      case Kind::Sum: {
        Expr body = simp(e.arg(0));
        if (body.is_zero()) return ex::constant(Rational(0));
        auto lo = e.sub().as_constant();
        auto hi = e.sub2().as_constant();
        if (lo && hi && *hi < *lo) return ex::constant(Rational(0));
        if (body.kind() != Kind::Add) {
          auto parts = split_terms(body, ctx_);
          if (parts.size() == 1 && !(parts[0].coeff == QuadExt(field_, Rational(1)))) {
            return product({{quad_to_expr(parts[0].coeff), Sub(1)},
                            {ex::sum(e.name(), e.sub(), e.sub2(), parts[0].rest), Sub(1)}});
          }
        }
        return ex::sum(e.name(), e.sub(), e.sub2(), body);
      }
      case Kind::Arctan: {
        Expr a = simp(e.arg(0));
        if (a.is_zero()) return a;
        return ex::arctan(a);
      }
    }
    return e;
  }

 private:
  Expr one() const { return ex::constant(Rational(1)); }

  // Splits a sum into content * primitive part when all coefficients are rational multiples of the first.
  Expr primitive(const Expr& sum, QuadExt& content) {
    auto parts = split_terms(sum, ctx_);
    if (parts.size() < 2 || parts[0].coeff.is_zero()) return sum;
    QuadExt lead = parts[0].coeff;
    QuadExt inv = lead.inverse();
    std::vector<Rational> ratios;
    BigInt num(0), den(1);
    for (const auto& t : parts) {
      QuadExt r = t.coeff * inv;
      if (!r.is_rational()) return sum;
      ratios.push_back(r.a());
      if (r.a().is_zero()) continue;
      BigInt n = r.a().numerator();
      if (n < 0) n = -n;
      num = num == 0 ? n : gcd(num, n);
      den = lcm(den, r.a().denominator());
    }
    Rational unit(num, den);
    if (lead.is_rational() && lead.a() > Rational(0) && unit.is_one() && lead.a().is_one()) return sum;
    content = lead * QuadExt(field_, unit);
    std::vector<Expr> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out.push_back(build_term(QuadExt(field_, ratios[i] / unit), parts[i].rest));
    }
    return ex::add(std::move(out));
  }

  struct Acc {
    QuadExt coeff;
    Sub sigma, tau, m1;
    bool has_sigma = false, has_tau = false, has_m1 = false;
    // Slot order: -1 sigma, -2 tau, -3 minus-one power, k >= 0 index into bases.
    std::vector<int> order;
    std::vector<std::pair<Expr, Sub>> bases;
  };

  void add_base(Acc& acc, const Expr& b, const Sub& mult) {
    for (auto& [base, e] : acc.bases) {
      if (base == b) {
        e += mult;
        return;
      }
    }
    acc.order.push_back(static_cast<int>(acc.bases.size()));
    acc.bases.emplace_back(b, mult);
  }

  void add_special(Acc& acc, int slot, const Sub& amount) {
    Sub* target = slot == -1 ? &acc.sigma : slot == -2 ? &acc.tau : &acc.m1;
    bool* seen = slot == -1 ? &acc.has_sigma : slot == -2 ? &acc.has_tau : &acc.has_m1;
    if (!*seen) {
      *seen = true;
      acc.order.push_back(slot);
    }
    *target += amount;
  }

  void add_factor(Acc& acc, const Expr& f, const Sub& mult) {
    if (mult.is_zero()) return;
    auto m = mult.as_constant();
    switch (f.kind()) {
      case Kind::Const: {
        const Rational& c = f.value();
        if (m) {
          if (c.is_zero() && *m < 0) throw ArithmeticError("division by zero in simplification");
          acc.coeff *= c.pow(*m);
        } else if (c == Rational(-1)) {
          add_special(acc, -3, mult);
        } else if (!c.is_one()) {
          add_base(acc, f, mult);
        }
        return;
      }
      case Kind::SqrtD:
        if (m && field_.has_radical()) {
          acc.coeff *= QuadExt::radical(field_).pow(*m);
        } else {
          add_base(acc, f, mult);
        }
        return;
      case Kind::SigmaPow: add_special(acc, -1, f.sub() * mult); return;
      case Kind::TauPow: add_special(acc, -2, f.sub() * mult); return;
      case Kind::MinusOnePow: add_special(acc, -3, f.sub() * mult); return;
      case Kind::Mul:
        for (const auto& a : f.args()) add_factor(acc, a, mult);
        return;
      case Kind::Div:
        add_factor(acc, f.arg(0), mult);
        add_factor(acc, f.arg(1), -mult);
        return;
      case Kind::Pow: add_factor(acc, f.arg(0), f.sub() * mult); return;
      case Kind::Neg:
        add_factor(acc, ex::constant(Rational(-1)), mult);
        add_factor(acc, f.arg(0), mult);
        return;
      case Kind::Add:
        if (m) {
          if (auto v = constant_value(f, ctx_)) {
            if (v->is_zero() && *m < 0) throw ArithmeticError("division by zero in simplification");
            acc.coeff *= v->pow(*m);
            return;
          }
          QuadExt g(field_, Rational(1));
          Expr prim = primitive(f, g);
          acc.coeff *= g.pow(*m);
          add_base(acc, prim, mult);
          return;
        }
        add_base(acc, f, mult);
        return;
      default:
        add_base(acc, f, mult);
        return;
    }
  }

  Expr product(const std::vector<std::pair<Expr, Sub>>& factors) {
    Acc acc{QuadExt(field_, Rational(1)), {}, {}, {}, false, false, false, {}, {}};
    for (const auto& [f, m] : factors) add_factor(acc, f, m);
    if (acc.coeff.is_zero()) return ex::constant(Rational(0));
    std::vector<Expr> num, den;
    for (int slot : acc.order) {
      if (slot == -1) {
        if (!acc.sigma.is_zero()) num.push_back(ex::sigma_pow(acc.sigma));
      } else if (slot == -2) {
        if (!acc.tau.is_zero()) num.push_back(ex::tau_pow(acc.tau));
      } else if (slot == -3) {
        if (auto c = acc.m1.as_constant()) {
          if (*c % 2 != 0) acc.coeff = -acc.coeff;
        } else {
          num.push_back(ex::minus_one_pow(acc.m1));
        }
      } else {
        const auto& [b, e] = acc.bases[static_cast<std::size_t>(slot)];
        auto c = e.as_constant();
        if (c && *c == 0) continue;
        if (c && *c == 1) {
          num.push_back(b);
        } else if (c && *c < 0) {
          den.push_back(*c == -1 ? b : ex::pow(b, Sub(-*c)));
        } else {
          num.push_back(ex::pow(b, e));
        }
      }
    }
    if (opts_.identity_rules) lucas_fibonacci_product(num);
    if (opts_.sort) {
      std::sort(num.begin(), num.end());
      std::sort(den.begin(), den.end());
    }
    Expr numerator = build_term(acc.coeff, ex::mul(std::move(num)));
    if (den.empty()) return numerator;
    return ex::div(numerator, ex::mul(std::move(den)));
  }

  // L[h]^a * F[h]^b -> F[2h]^min(a,b) * ...
  void lucas_fibonacci_product(std::vector<Expr>& num) {
    if (!fib_ || !luc_) return;
    auto unpack = [](const Expr& e, std::string& fam, Sub& h, long& power) {
      Expr b = e;
      power = 1;
      if (e.kind() == Kind::Pow) {
        auto c = e.sub().as_constant();
        if (!c || *c <= 0) return false;
        power = *c;
        b = e.arg(0);
      }
      if (b.kind() != Kind::Seq) return false;
      fam = b.name();
      h = b.sub();
      return true;
    };
    for (std::size_t i = 0; i < num.size(); ++i) {
      std::string fi;
      Sub hi;
      long pi;
      if (!unpack(num[i], fi, hi, pi) || fi != *luc_) continue;
      for (std::size_t j = 0; j < num.size(); ++j) {
        std::string fj;
        Sub hj;
        long pj;
        if (!unpack(num[j], fj, hj, pj) || fj != *fib_ || !(hj == hi)) continue;
        long m = std::min(pi, pj);
        auto power = [](const Expr& base, long p) { return p == 1 ? base : ex::pow(base, Sub(p)); };
        Expr doubled = power(ex::seq(*fib_, hi * Sub(2)), m);
        std::vector<Expr> out;
        for (std::size_t k = 0; k < num.size(); ++k) {
          if (k == i) {
            if (pi > m) out.push_back(power(ex::seq(*luc_, hi), pi - m));
          } else if (k == j) {
            if (pj > m) out.push_back(power(ex::seq(*fib_, hi), pj - m));
            out.push_back(doubled);
          } else {
            out.push_back(num[k]);
          }
        }
        num = std::move(out);
        return;
      }
    }
  }

  struct Collected {
    Expr rest;
    QuadExt coeff;
  };

  Expr sum_terms(const std::vector<Expr>& terms) {
    std::vector<Collected> acc;
    std::map<Expr, std::size_t> where;
    for (const auto& t : terms) {
      for (auto& part : split_terms(t, ctx_)) {
        auto it = where.find(part.rest);
        if (it == where.end()) {
          where.emplace(part.rest, acc.size());
          acc.push_back({part.rest, part.coeff});
        } else {
          acc[it->second].coeff += part.coeff;
        }
      }
    }
    acc.erase(std::remove_if(acc.begin(), acc.end(), [](const Collected& c) { return c.coeff.is_zero(); }),
              acc.end());
    if (opts_.identity_rules) {
      while (fibonacci_sum_rule(acc)) {
      }
    }
    if (opts_.sort) {
      std::sort(acc.begin(), acc.end(), [](const Collected& a, const Collected& b) { return a.rest < b.rest; });
    }
    std::vector<Expr> out;
    for (const auto& c : acc) out.push_back(build_term(c.coeff, c.rest));
    return ex::add(std::move(out));
  }

  static std::vector<Expr> factors_of(const Expr& rest) {
    if (rest.is_one()) return {};
    if (rest.kind() == Kind::Mul) return rest.args();
    return {rest};
  }

  // Removes the common factors; returns the leftovers of each side.
  static void difference(std::vector<Expr> a, std::vector<Expr> b, std::vector<Expr>& da,
                         std::vector<Expr>& db, std::vector<Expr>& common) {
    for (auto& x : a) {
      auto it = std::find(b.begin(), b.end(), x);
      if (it != b.end()) {
        common.push_back(x);
        b.erase(it);
      } else {
        da.push_back(x);
      }
    }
    db = std::move(b);
  }

  bool is_seq(const Expr& e, const std::optional<std::string>& fam) const {
    return fam && e.kind() == Kind::Seq && e.name() == *fam;
  }

  bool fibonacci_sum_rule(std::vector<Collected>& acc) {
    if (!fib_ || !luc_) return false;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i].rest.kind() == Kind::Div) continue;
      for (std::size_t j = i + 1; j < acc.size(); ++j) {
        if (acc[j].rest.kind() == Kind::Div || !(acc[i].coeff == acc[j].coeff)) continue;
        std::vector<Expr> da, db, common;
        difference(factors_of(acc[i].rest), factors_of(acc[j].rest), da, db, common);
        std::optional<Expr> replacement;
        QuadExt scale(field_, Rational(1));
        if (da.size() == 1 && db.size() == 1) {
          for (const auto& [from, to, factor] :
               {std::tuple{fib_, luc_, 1}, std::tuple{luc_, fib_, 5}}) {
            if (!is_seq(da[0], from) || !is_seq(db[0], from)) continue;
            Sub diff = da[0].sub() - db[0].sub();
            auto c = diff.as_constant();
            if (!c || (*c != 2 && *c != -2)) continue;
            Sub low = *c == 2 ? db[0].sub() : da[0].sub();
            replacement = ex::seq(*to, low + Sub(1));
            scale = QuadExt(field_, Rational(factor));
          }
        } else if (da.size() == 2 && db.size() == 2) {
          auto pick = [&](const std::vector<Expr>& v, const std::optional<std::string>& fam) -> const Expr* {
            for (const auto& x : v) {
              if (is_seq(x, fam)) return &x;
            }
            return nullptr;
          };
          const Expr* la = pick(da, luc_);
          const Expr* fa = pick(da, fib_);
          const Expr* lb = pick(db, luc_);
          const Expr* fb = pick(db, fib_);
          if (la && fa && lb && fb && la->sub() == fb->sub() && fa->sub() == lb->sub() &&
              !(la->sub() == fa->sub())) {
            replacement = ex::seq(*fib_, la->sub() + fa->sub());
            scale = QuadExt(field_, Rational(2));
          }
        }
        if (!replacement) continue;
        common.push_back(*replacement);
        acc[i].coeff *= scale;
        acc[i].rest = product_of(common);
        acc.erase(acc.begin() + static_cast<long>(j));
        return true;
      }
    }
    return false;
  }

  Expr product_of(const std::vector<Expr>& fs) {
    std::vector<std::pair<Expr, Sub>> v;
    for (const auto& f : fs) v.emplace_back(f, Sub(1));
    return product(v);
  }

  const Context& ctx_;
  const SimplifyOptions& opts_;
  const QuadField& field_;
  std::optional<std::string> fib_;
  std::optional<std::string> luc_;
};

}  // namespace

Expr quad_to_expr(const QuadExt& c) {
  if (c.is_rational()) return ex::constant(c.a());
  Expr rad = c.b().is_one() ? ex::sqrt_d() : ex::mul(ex::constant(c.b()), ex::sqrt_d());
  if (c.a().is_zero()) return rad;
  return ex::add(ex::constant(c.a()), rad);
}

Expr build_term(const QuadExt& coeff, const Expr& rest) {
  if (coeff.is_zero()) return ex::constant(Rational(0));
  if (rest.is_one()) return quad_to_expr(coeff);
  if (rest.kind() == Kind::Div) return ex::div(build_term(coeff, rest.arg(0)), rest.arg(1));
  if (coeff.is_rational() && coeff.a().is_one()) return rest;
  return ex::mul(std::vector<Expr>{quad_to_expr(coeff), rest});
}

std::optional<QuadExt> constant_value(const Expr& e, const Context& ctx) {
  const QuadField& f = ctx.field();
  switch (e.kind()) {
    case Kind::Const: return QuadExt(f, e.value());
    case Kind::SqrtD: return ctx.sqrt_value();
    case Kind::Param: return QuadExt(f, e.name() == "p" ? ctx.p : ctx.q);
    case Kind::Add: {
      QuadExt total(f);
      for (const auto& a : e.args()) {
        auto v = constant_value(a, ctx);
        if (!v) return std::nullopt;
        total += *v;
      }
      return total;
    }
    case Kind::Mul: {
      QuadExt total(f, Rational(1));
      for (const auto& a : e.args()) {
        auto v = constant_value(a, ctx);
        if (!v) return std::nullopt;
        total *= *v;
      }
      return total;
    }
    case Kind::Neg: {
      auto v = constant_value(e.arg(0), ctx);
      if (!v) return std::nullopt;
      return -*v;
    }
    case Kind::Div: {
      auto n = constant_value(e.arg(0), ctx);
      auto d = constant_value(e.arg(1), ctx);
      if (!n || !d || d->is_zero()) return std::nullopt;
      return *n / *d;
    }
    case Kind::Pow: {
      auto b = constant_value(e.arg(0), ctx);
      auto c = e.sub().as_constant();
      if (!b || !c || (b->is_zero() && *c < 0)) return std::nullopt;
      return b->pow(*c);
    }
    default:
      return std::nullopt;
  }
}

std::vector<TermParts> split_terms(const Expr& e, const Context& ctx) {
  const QuadField& f = ctx.field();
  std::vector<TermParts> out;
  if (e.kind() == Kind::Add) {
    for (const auto& a : e.args()) {
      auto sub = split_terms(a, ctx);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  if (auto v = constant_value(e, ctx)) {
    out.push_back({*v, ex::constant(Rational(1))});
    return out;
  }
  if (e.kind() == Kind::Mul) {
    QuadExt c(f, Rational(1));
    std::vector<Expr> rest;
    for (const auto& a : e.args()) {
      if (auto v = constant_value(a, ctx)) {
        c *= *v;
      } else {
        rest.push_back(a);
      }
    }
    out.push_back({c, ex::mul(std::move(rest))});
    return out;
  }
  if (e.kind() == Kind::Div) {
    auto inner = split_terms(e.arg(0), ctx);
    if (inner.size() == 1) {
      Expr r = inner[0].rest;
      out.push_back({inner[0].coeff, ex::div(r, e.arg(1))});
      return out;
    }
  }
  out.push_back({QuadExt(f, Rational(1)), e});
  return out;
}

Expr simplify_expr(const Expr& e, const Context& ctx, const SimplifyOptions& opts) {
  Simplifier s(ctx, opts);
  return s.run(e);
}

Identity simplify(const Identity& id, const SimplifyOptions& opts) {
  return id.with_sides(simplify_expr(id.lhs, id.ctx, opts), simplify_expr(id.rhs, id.ctx, opts));
}

Identity normalize_scalars(const Identity& id, const SimplifyOptions& opts) {
  Identity s = simplify(id, opts);
  auto lt = split_terms(s.lhs, s.ctx);
  auto rt = split_terms(s.rhs, s.ctx);
  lt.erase(std::remove_if(lt.begin(), lt.end(), [](const TermParts& t) { return t.coeff.is_zero(); }), lt.end());
  rt.erase(std::remove_if(rt.begin(), rt.end(), [](const TermParts& t) { return t.coeff.is_zero(); }), rt.end());
  if (lt.empty() && rt.empty()) return s;
  QuadExt lead = !lt.empty() ? lt[0].coeff : rt[0].coeff;
  QuadExt inv = lead.inverse();
  BigInt den(1), num(0);
  for (auto* side : {&lt, &rt}) {
    for (auto& t : *side) {
      t.coeff *= inv;
      for (const Rational* r : {&t.coeff.a(), &t.coeff.b()}) {
        if (r->is_zero()) continue;
        den = lcm(den, r->denominator());
      }
    }
  }
  for (auto* side : {&lt, &rt}) {
    for (auto& t : *side) {
      for (const Rational* r : {&t.coeff.a(), &t.coeff.b()}) {
        if (r->is_zero()) continue;
        BigInt n = (*r * Rational(den)).numerator();
        if (n < 0) n = -n;
        num = num == 0 ? n : gcd(num, n);
      }
    }
  }
  Rational scale = num == 0 ? Rational(den) : Rational(den, num);
  auto rebuild = [&](std::vector<TermParts>& terms) {
    std::vector<Expr> out;
    for (auto& t : terms) out.push_back(build_term(t.coeff * scale, t.rest));
    return ex::add(std::move(out));
  };
  Expr l = rebuild(lt);
  Expr r = rebuild(rt);
  return s.with_sides(simplify_expr(l, s.ctx, opts), simplify_expr(r, s.ctx, opts));
}

}  // namespace fibdiff
