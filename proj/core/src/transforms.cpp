#include "fibdiff/transforms.hpp"

#include <map>

#include "fibdiff/canonical.hpp"
#include "fibdiff/errors.hpp"
#include "fibdiff/printer.hpp"
#include "fibdiff/simplify.hpp"

namespace fibdiff {

namespace {

Expr zero() { return ex::constant(Rational(0)); }
Expr one() { return ex::constant(Rational(1)); }
Expr minus(const Expr& e) { return ex::mul(ex::constant(Rational(-1)), e); }

SimplifyOptions plain() {
  SimplifyOptions o;
  o.identity_rules = false;
  return o;
}

// Splits e by its degree in the atom of kind k.
std::map<int, Expr> degree_split(const Expr& e, Kind k) {
  if (!contains_kind(e, k)) return {{0, e}};
  switch (e.kind()) {
    case Kind::Pi:
    case Kind::LnTau:
    case Kind::ImagUnit:
      if (e.kind() == k) return {{1, one()}};
      break;
    case Kind::Add: {
      std::map<int, std::vector<Expr>> parts;
      for (const auto& a : e.args()) {
        for (auto& [d, x] : degree_split(a, k)) parts[d].push_back(x);
      }
      std::map<int, Expr> out;
      for (auto& [d, xs] : parts) out[d] = ex::add(std::move(xs));
      return out;
    }
    case Kind::Mul: {
      std::map<int, Expr> acc{{0, one()}};
      for (const auto& a : e.args()) {
        auto s = degree_split(a, k);
        std::map<int, std::vector<Expr>> next;
        for (const auto& [d1, x1] : acc) {
          for (const auto& [d2, x2] : s) next[d1 + d2].push_back(ex::mul(x1, x2));
        }
        acc.clear();
        for (auto& [d, xs] : next) acc[d] = ex::add(std::move(xs));
      }
      return acc;
    }
    case Kind::Neg: {
      auto s = degree_split(e.arg(0), k);
      for (auto& [d, x] : s) x = minus(x);
      return s;
    }
    case Kind::Div: {
      if (contains_kind(e.arg(1), k)) break;
      auto s = degree_split(e.arg(0), k);
      for (auto& [d, x] : s) x = ex::div(x, e.arg(1));
      return s;
    }
    case Kind::Pow: {
      auto c = e.sub().as_constant();
      if (!c || *c < 0) break;
      std::vector<Expr> f(static_cast<std::size_t>(*c), e.arg(0));
      return degree_split(ex::mul(std::move(f)), k);
    }
    case Kind::Sum: {
      auto s = degree_split(e.arg(0), k);
      for (auto& [d, x] : s) x = ex::sum(e.name(), e.sub(), e.sub2(), x);
      return s;
    }
    default:
      break;
  }
  throw PreconditionError("malformed derivation: a transcendental factor occurs in a non-linear position");
}

std::vector<FamilyDecl> used_decls(const DerivedForm& df) {
  std::set<std::string> names = families_used(df.lhs);
  auto r = families_used(df.rhs);
  names.insert(r.begin(), r.end());
  std::vector<FamilyDecl> out;
  for (const auto& n : names) {
    const FamilyDecl* d = df.source.ctx.find(n);
    if (!d) throw PreconditionError("undeclared family " + n);
    out.push_back(*d);
  }
  return out;
}

std::string companion(Context& ctx, FamilyRole want, const std::string& preferred) {
  if (auto n = ctx.family_with_role(want)) return *n;
  if (ctx.find(preferred)) {
    throw PreconditionError("companion family " + preferred + " is declared with another role");
  }
  ctx.declare(preferred, want);
  return preferred;
}

// Keeps exactly the degree-one part in the atom; the rest must vanish.
Expr linear_part(const Expr& side, Kind k, const Context& ctx, const char* what) {
  Expr s = simplify_expr(side, ctx, plain());
  auto parts = degree_split(s, k);
  Expr result = zero();
  for (auto& [d, x] : parts) {
    Expr sx = simplify_expr(x, ctx, plain());
    if (d == 1) {
      result = sx;
    } else if (!sx.is_zero()) {
      throw PreconditionError(std::string("malformed derivation: a term with ") +
                              (d == 0 ? "no " : "several ") + what + " factor" + (d == 0 ? "" : "s") +
                              " remains");
    }
  }
  return result;
}

Expr half() { return ex::constant(Rational(BigInt(1), BigInt(2))); }

// B_X = (X[0] tau - X[1]) / sqrtD for a symbolic family.
Expr binet_b(const std::string& fam, const Context& ctx) {
  Expr tau = ex::mul(half(), ex::add(ex::constant(ctx.p), ex::sqrt_d()));
  Expr num = ex::add(ex::mul(ex::seq(fam, Sub(0)), tau), minus(ex::seq(fam, Sub(1))));
  return ex::div(num, ex::sqrt_d());
}

// Z[h+1] - q Z[h-1]
Expr lemma_pair(const std::string& fam, const Sub& h, const Rational& q) {
  return ex::add(ex::seq(fam, h + Sub(1)), ex::mul(ex::constant(-q), ex::seq(fam, h - Sub(1))));
}

bool sigma_free(const Expr& e) { return !contains_kind(e, Kind::SigmaPow); }

// True when the additive terms of the side all share one nonzero sigma exponent.
std::optional<Sub> common_sigma(const Expr& side) {
  std::vector<Expr> terms = side.kind() == Kind::Add ? side.args() : std::vector<Expr>{side};
  if (terms.size() < 2) return std::nullopt;
  std::optional<Sub> common;
  for (const auto& t : terms) {
    std::vector<Expr> fs = t.kind() == Kind::Mul ? t.args() : std::vector<Expr>{t};
    std::optional<Sub> mine;
    for (const auto& f : fs) {
      if (f.kind() == Kind::SigmaPow) {
        if (mine) return std::nullopt;
        mine = f.sub();
      } else if (!sigma_free(f)) {
        return std::nullopt;
      }
    }
    if (!mine) return std::nullopt;
    if (common && !(*common == *mine)) return std::nullopt;
    common = mine;
  }
  if (common && common->is_zero()) return std::nullopt;
  return common;
}

void check_no_markers(const Identity& id) {
  for (const Expr* side : {&id.lhs, &id.rhs}) {
    for (Kind k : {Kind::Pi, Kind::ImagUnit, Kind::LnTau, Kind::DerivSeq}) {
      if (contains_kind(*side, k)) throw PreconditionError("transform left a marker in the identity");
    }
  }
}

}  // namespace

Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& f) {
  Expr mapped = map_children(e, [&](const Expr& c) { return rewrite(c, f); });
  if (auto r = f(mapped)) return *r;
  return mapped;
}

Identity apply_real_part(const DerivedForm& df) {
  Context ctx = df.source.ctx;
  if (ctx.q != Rational(-1)) {
    throw PreconditionError("real-part rules need q = -1 (context has q = " + ctx.q.str() + ")");
  }
  std::map<std::string, std::function<Expr(const Sub&)>> rule;
  for (const auto& d : used_decls(df)) {
    switch (d.role) {
      case FamilyRole::Fibonacci: {
        std::string l = companion(ctx, FamilyRole::Lucas, "L");
        rule[d.name] = [l](const Sub& h) { return ex::div(ex::seq(l, h), ex::sqrt_d()); };
        break;
      }
      case FamilyRole::Lucas: {
        std::string f = companion(ctx, FamilyRole::Fibonacci, "F");
        rule[d.name] = [f](const Sub& h) { return ex::mul(ex::sqrt_d(), ex::seq(f, h)); };
        break;
      }
      case FamilyRole::LucasU: {
        std::string v = companion(ctx, FamilyRole::LucasV, "V");
        rule[d.name] = [v](const Sub& h) { return ex::div(ex::seq(v, h), ex::sqrt_d()); };
        break;
      }
      case FamilyRole::LucasV: {
        std::string u = companion(ctx, FamilyRole::LucasU, "U");
        rule[d.name] = [u](const Sub& h) { return ex::mul(ex::sqrt_d(), ex::seq(u, h)); };
        break;
      }
      case FamilyRole::Gibonacci:
      case FamilyRole::Horadam: {
        std::string w = d.name;
        rule[d.name] = [w](const Sub& h) {
          return ex::div(ex::add(ex::seq(w, h + Sub(1)), ex::seq(w, h - Sub(1))), ex::sqrt_d());
        };
        break;
      }
    }
  }
  auto subst = [&](const Expr& side) {
    return rewrite(side, [&](const Expr& n) -> std::optional<Expr> {
      if (n.kind() == Kind::DerivSeq) return ex::mul(rule.at(n.name())(n.sub()), ex::ln_tau());
      if (n.kind() == Kind::ImagUnit) return zero();
      return std::nullopt;
    });
  };
  Expr l = linear_part(subst(df.lhs), Kind::LnTau, ctx, "ln");
  Expr r = linear_part(subst(df.rhs), Kind::LnTau, ctx, "ln");
  Identity out = df.source.with_sides(l, r);
  out.ctx = ctx;
  out.provenance = "real part of d/d" + df.wrt + (df.source.provenance.empty() ? "" : " of " + df.source.provenance);
  out = normalize_scalars(out, plain());
  check_no_markers(out);
  return out;
}

Identity apply_imag_part(const DerivedForm& df) {
  const Context& ctx = df.source.ctx;
  if (ctx.q.sign() >= 0) {
    throw PreconditionError("imaginary-part rules need q < 0 (context has q = " + ctx.q.str() + ")");
  }
  if ((contains_kind(df.source.lhs, Kind::Arctan) || contains_kind(df.source.rhs, Kind::Arctan)) &&
      !df.source.has_constraint(Constraint::Kind::RealValid)) {
    throw PreconditionError(
        "arctan identity: rewrite it in a form valid for real indices and mark it real-valid first");
  }
  if (provable_shape(df.source) && !function_form_holds(df.source, df.wrt)) {
    throw PreconditionError("identity holds only for integer " + df.wrt +
                            ": keep (-1)-powers such as (-1)^(2" + df.wrt + ") unevaluated so it holds for real " +
                            df.wrt);
  }
  std::map<std::string, Expr> coeff;
  for (const auto& d : used_decls(df)) {
    switch (d.role) {
      case FamilyRole::Fibonacci:
      case FamilyRole::LucasU:
        coeff[d.name] = minus(ex::div(one(), ex::sqrt_d()));
        break;
      case FamilyRole::Lucas:
      case FamilyRole::LucasV:
        coeff[d.name] = one();
        break;
      case FamilyRole::Gibonacci:
      case FamilyRole::Horadam:
        coeff[d.name] = binet_b(d.name, ctx);
        break;
    }
  }
  auto subst = [&](const Expr& side) {
    Expr s = simplify_expr(side, ctx, plain());
    auto by_i = degree_split(s, Kind::ImagUnit);
    for (const auto& [d, x] : by_i) {
      if (d >= 2 && !simplify_expr(x, ctx, plain()).is_zero()) {
        throw PreconditionError("malformed derivation: residual imaginary unit");
      }
    }
    return rewrite(s, [&](const Expr& n) -> std::optional<Expr> {
      if (n.kind() == Kind::DerivSeq) {
        return ex::mul({coeff.at(n.name()), ex::sigma_pow(n.sub()), ex::pi()});
      }
      if (n.kind() == Kind::ImagUnit) return one();
      if (n.kind() == Kind::LnTau) return zero();
      return std::nullopt;
    });
  };
  Expr l = linear_part(subst(df.lhs), Kind::Pi, ctx, "pi");
  Expr r = linear_part(subst(df.rhs), Kind::Pi, ctx, "pi");
  Identity out = df.source.with_sides(l, r);
  out.provenance = "imaginary part of d/d" + df.wrt + (df.source.provenance.empty() ? "" : " of " + df.source.provenance);
  out = normalize_scalars(out, plain());
  for (const Expr* side : {&out.lhs, &out.rhs}) {
    if (auto e = common_sigma(*side)) {
      Sub shift = -*e;
      out = out.with_sides(push_sigma(out.lhs, shift), push_sigma(out.rhs, shift));
      out = normalize_scalars(out, plain());
      break;
    }
  }
  check_no_markers(out);
  return out;
}

Expr push_sigma(const Expr& e, const Sub& d) {
  if (d.is_zero()) return e;
  switch (e.kind()) {
    case Kind::Add: {
      std::vector<Expr> ts;
      for (const auto& a : e.args()) ts.push_back(push_sigma(a, d));
      return ex::add(std::move(ts));
    }
    case Kind::Mul: {
      std::vector<Expr> fs = e.args();
      for (auto& f : fs) {
        if (!sigma_free(f)) {
          f = push_sigma(f, d);
          return ex::mul(std::move(fs));
        }
      }
      fs.push_back(ex::sigma_pow(d));
      return ex::mul(std::move(fs));
    }
    case Kind::Div:
      return ex::div(push_sigma(e.arg(0), d), e.arg(1));
    case Kind::Neg:
      return ex::neg(push_sigma(e.arg(0), d));
    case Kind::Sum:
      return ex::sum(e.name(), e.sub(), e.sub2(), push_sigma(e.arg(0), d));
    case Kind::SigmaPow:
      return ex::sigma_pow(e.sub() + d);
    case Kind::Pow:
      if (e.arg(0).kind() == Kind::SigmaPow) return ex::sigma_pow(e.arg(0).sub() * e.sub() + d);
      [[fallthrough]];
    default:
      if (e.is_zero()) return e;
      return ex::mul(e, ex::sigma_pow(d));
  }
}

Sub default_pivot(const Identity& sid) {
  std::vector<std::string> vars(sid.free_indices.begin(), sid.free_indices.end());
  std::optional<std::vector<long>> best;
  auto consider = [&](const Sub& exponent, const std::set<std::string>& bound) {
    auto a = exponent.affine();
    if (!a) return;
    std::vector<long> key;
    for (const auto& v : vars) key.push_back(bound.count(v) ? 0 : a->coeff(v));
    key.push_back(a->constant);
    if (!best || key < *best) best = key;
  };
  std::function<void(const Expr&, std::set<std::string>&, bool)> walk =
      [&](const Expr& e, std::set<std::string>& bound, bool additive) {
        if (additive && sigma_free(e)) {
          consider(Sub(0), bound);
          return;
        }
        switch (e.kind()) {
          case Kind::Add:
            for (const auto& a : e.args()) walk(a, bound, true);
            return;
          case Kind::Sum: {
            bool ins = bound.insert(e.name()).second;
            walk(e.arg(0), bound, true);
            if (ins) bound.erase(e.name());
            return;
          }
          case Kind::Div:
          case Kind::Neg:
            walk(e.arg(0), bound, additive);
            return;
          case Kind::Mul:
            for (const auto& a : e.args()) {
              if (!sigma_free(a)) walk(a, bound, false);
            }
            return;
          case Kind::SigmaPow:
            consider(e.sub(), bound);
            return;
          case Kind::Pow:
            if (e.arg(0).kind() == Kind::SigmaPow) consider(e.arg(0).sub() * e.sub(), bound);
            return;
          default:
            return;
        }
      };
  std::set<std::string> bound;
  walk(sid.lhs, bound, true);
  walk(sid.rhs, bound, true);
  if (!best) return Sub(0);
  Affine a;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if ((*best)[i] != 0) a.coeffs[vars[i]] = (*best)[i];
  }
  a.constant = best->back();
  return Sub::from_affine(a);
}

Identity shift_normalize(const Identity& sid, const std::string& fresh, const std::optional<Sub>& pivot) {
  auto bound = bound_vars(sid.lhs);
  auto br = bound_vars(sid.rhs);
  bound.insert(br.begin(), br.end());
  if (sid.free_indices.count(fresh) || bound.count(fresh)) {
    throw PreconditionError("shift variable " + fresh + " is already used in the identity");
  }
  if (fresh.empty() || !std::islower(static_cast<unsigned char>(fresh[0]))) {
    throw PreconditionError("shift variable must be a lowercase index name");
  }
  Sub e = pivot ? *pivot : default_pivot(sid);
  Sub d = Sub::var(fresh) - e;
  Identity out = sid.with_sides(simplify_expr(push_sigma(sid.lhs, d), sid.ctx, plain()),
                                simplify_expr(push_sigma(sid.rhs, d), sid.ctx, plain()));
  return out;
}

Identity conjugate_swap(const Identity& sid) {
  auto swap = [&](const Expr& side) {
    Expr r = rewrite(side, [](const Expr& n) -> std::optional<Expr> {
      if (n.kind() == Kind::SigmaPow) return ex::tau_pow(n.sub());
      if (n.kind() == Kind::TauPow) return ex::sigma_pow(n.sub());
      if (n.kind() == Kind::SqrtD) return minus(ex::sqrt_d());
      return std::nullopt;
    });
    return simplify_expr(r, sid.ctx, plain());
  };
  Identity out = sid.with_sides(swap(sid.lhs), swap(sid.rhs));
  return out;
}

namespace {

struct Pair {
  Expr a;  // rational part
  Expr b;  // coefficient of sqrtD
};

class Combiner {
 public:
  Combiner(const Context& ctx, std::string fam) : ctx_(ctx), fam_(std::move(fam)), d_(ex::constant(ctx.radicand())) {}

  Pair split(const Expr& e) {
    if (!contains_kind(e, Kind::SqrtD)) return {e, zero()};
    switch (e.kind()) {
      case Kind::SqrtD: return {zero(), one()};
      case Kind::Add: {
        std::vector<Expr> as, bs;
        for (const auto& x : e.args()) {
          Pair p = split(x);
          as.push_back(p.a);
          bs.push_back(p.b);
        }
        return {ex::add(std::move(as)), ex::add(std::move(bs))};
      }
      case Kind::Neg: {
        Pair p = split(e.arg(0));
        return {minus(p.a), minus(p.b)};
      }
      case Kind::Mul: {
        Pair acc{one(), zero()};
        for (const auto& x : e.args()) acc = times(acc, split(x));
        return acc;
      }
      case Kind::Div: {
        Pair n = split(e.arg(0));
        Pair den = split(e.arg(1));
        if (den.b.is_zero()) return {ex::div(n.a, e.arg(1)), ex::div(n.b, e.arg(1))};
        Expr norm = ex::add(ex::pow(den.a, Sub(2)), minus(ex::mul({d_, ex::pow(den.b, Sub(2))})));
        Pair conj{den.a, minus(den.b)};
        Pair num = times(n, conj);
        return {ex::div(num.a, norm), ex::div(num.b, norm)};
      }
      case Kind::Pow: {
        auto c = e.sub().as_constant();
        if (!c) break;
        if (*c < 0) return split(ex::div(one(), ex::pow(e.arg(0), Sub(-*c))));
        Pair base = split(e.arg(0));
        Pair acc{one(), zero()};
        for (long i = 0; i < *c; ++i) acc = times(acc, base);
        return acc;
      }
      case Kind::Sum: {
        Pair p = split(e.arg(0));
        return {ex::sum(e.name(), e.sub(), e.sub2(), p.a), ex::sum(e.name(), e.sub(), e.sub2(), p.b)};
      }
      default:
        break;
    }
    throw PreconditionError("cannot separate the radical part of " + print_expr(e, {ctx_.golden(), true}));
  }

  Pair times(const Pair& x, const Pair& y) {
    return {ex::add(ex::mul(x.a, y.a), ex::mul({d_, x.b, y.b})), ex::add(ex::mul(x.a, y.b), ex::mul(x.b, y.a))};
  }

  // R * (t1, t2) for a sigma-free factor R = Ra + Rb sqrtD.
  Pair scale(const Expr& r, const Pair& t) {
    Pair s = split(r);
    return {ex::add(ex::mul(s.a, t.a), ex::mul(s.b, t.b)), ex::add(ex::mul(s.a, t.b), ex::mul({s.b, d_, t.a}))};
  }

  Pair sigma(const Sub& h) { return {ex::seq(fam_, h), minus(lemma_pair(fam_, h, ctx_.q))}; }

  Pair transform(const Expr& e) {
    if (contains_kind(e, Kind::TauPow)) throw PreconditionError("Binet recombination expects sigma powers only");
    if (sigma_free(e)) return scale(e, sigma(Sub(0)));
    switch (e.kind()) {
      case Kind::SigmaPow: return sigma(e.sub());
      case Kind::Add: {
        std::vector<Expr> as, bs;
        for (const auto& x : e.args()) {
          Pair p = transform(x);
          as.push_back(p.a);
          bs.push_back(p.b);
        }
        return {ex::add(std::move(as)), ex::add(std::move(bs))};
      }
      case Kind::Neg: {
        Pair p = transform(e.arg(0));
        return {minus(p.a), minus(p.b)};
      }
      case Kind::Mul: {
        std::optional<std::size_t> at;
        std::vector<Expr> rest;
        for (std::size_t i = 0; i < e.args().size(); ++i) {
          if (sigma_free(e.arg(i))) {
            rest.push_back(e.arg(i));
          } else if (at) {
            throw PreconditionError("a term carries more than one sigma power");
          } else {
            at = i;
          }
        }
        return scale(ex::mul(std::move(rest)), transform(e.arg(*at)));
      }
      case Kind::Div:
        if (!sigma_free(e.arg(1))) throw PreconditionError("sigma power in a denominator");
        return scale(ex::div(one(), e.arg(1)), transform(e.arg(0)));
      case Kind::Sum: {
        Pair p = transform(e.arg(0));
        return {ex::sum(e.name(), e.sub(), e.sub2(), p.a), ex::sum(e.name(), e.sub(), e.sub2(), p.b)};
      }
      case Kind::Pow:
        if (e.arg(0).kind() == Kind::SigmaPow) return sigma(e.arg(0).sub() * e.sub());
        break;
      default:
        break;
    }
    throw PreconditionError("sigma power in a non-linear position");
  }

 private:
  const Context& ctx_;
  std::string fam_;
  Expr d_;
};

}  // namespace

Identity binet_combine(const Identity& sid, const std::string& family) {
  std::set<std::string> used = families_used(sid.lhs);
  auto r = families_used(sid.rhs);
  used.insert(r.begin(), r.end());
  if (used.count(family)) throw PreconditionError("family " + family + " already occurs in the identity");
  Context ctx = sid.ctx;
  Rational disc = ctx.p * ctx.p - Rational(4) * ctx.q;
  if (disc.sign() > 0 && disc.is_square()) {
    throw PreconditionError("recombination needs an irrational sqrtD (p^2 - 4q = " + disc.str() + " is a square)");
  }
  if (const FamilyDecl* d = ctx.find(family)) {
    if (!role_is_symbolic(d->role)) {
      throw PreconditionError("family " + family + " is declared as " + role_name(d->role) +
                              "; recombination needs symbolic seeds");
    }
  } else {
    ctx.declare(family, ctx.symbolic_role());
  }
  Combiner c(ctx, family);
  Expr l = c.transform(sid.lhs).a;
  Expr rr = c.transform(sid.rhs).a;
  Identity out = sid.with_sides(l, rr);
  out.ctx = ctx;
  out.provenance = "Binet recombination into " + family + (sid.provenance.empty() ? "" : " of " + sid.provenance);
  return normalize_scalars(out, plain());
}

}  // namespace fibdiff
