#include "fibdiff/expr.hpp"

#include "fibdiff/errors.hpp"

namespace fibdiff {

namespace {

Expr make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr leaf(Kind k) {
  Node n;
  n.kind = k;
  return make(std::move(n));
}

Expr with_sub(Kind k, const Sub& s) {
  Node n;
  n.kind = k;
  n.sub = s;
  return make(std::move(n));
}

}  // namespace

Expr::Expr() : n_(std::make_shared<const Node>()) {}

int compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  const Node& x = a.node();
  const Node& y = b.node();
  if (x.value != y.value) return x.value < y.value ? -1 : 1;
  if (int c = x.name.compare(y.name)) return c < 0 ? -1 : 1;
  if (int c = x.wrt.compare(y.wrt)) return c < 0 ? -1 : 1;
  if (int c = compare(x.sub, y.sub)) return c;
  if (int c = compare(x.sub2, y.sub2)) return c;
  std::size_t n = std::min(x.args.size(), y.args.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(x.args[i], y.args[i])) return c;
  }
  if (x.args.size() != y.args.size()) return x.args.size() < y.args.size() ? -1 : 1;
  return 0;
}

namespace ex {

Expr constant(const Rational& v) {
  Node n;
  n.kind = Kind::Const;
  n.value = v;
  return make(std::move(n));
}

Expr seq(const std::string& family, const Sub& s) {
  Node n;
  n.kind = Kind::Seq;
  n.name = family;
  n.sub = s;
  return make(std::move(n));
}

Expr tau_pow(const Sub& e) { return with_sub(Kind::TauPow, e); }
Expr sigma_pow(const Sub& e) { return with_sub(Kind::SigmaPow, e); }
Expr minus_one_pow(const Sub& e) { return with_sub(Kind::MinusOnePow, e); }
Expr sqrt_d() { return leaf(Kind::SqrtD); }
Expr pi() { return leaf(Kind::Pi); }
Expr ln_tau() { return leaf(Kind::LnTau); }
Expr imag_unit() { return leaf(Kind::ImagUnit); }

Expr param(const std::string& which) {
  if (which != "p" && which != "q") throw PreconditionError("unknown parameter " + which);
  Node n;
  n.kind = Kind::Param;
  n.name = which;
  return make(std::move(n));
}

Expr index(const Sub& s) { return with_sub(Kind::Index, s); }

namespace {

Expr nary(Kind k, std::vector<Expr> items) {
  std::vector<Expr> flat;
  flat.reserve(items.size());
  for (auto& it : items) {
    if (it.kind() == k) {
      flat.insert(flat.end(), it.args().begin(), it.args().end());
    } else {
      flat.push_back(std::move(it));
    }
  }
  if (flat.empty()) return constant(Rational(k == Kind::Add ? 0 : 1));
  if (flat.size() == 1) return flat[0];
  Node n;
  n.kind = k;
  n.args = std::move(flat);
  return make(std::move(n));
}

}  // namespace

Expr add(std::vector<Expr> terms) { return nary(Kind::Add, std::move(terms)); }
Expr mul(std::vector<Expr> factors) { return nary(Kind::Mul, std::move(factors)); }
Expr add(const Expr& a, const Expr& b) { return add(std::vector<Expr>{a, b}); }
Expr sub(const Expr& a, const Expr& b) { return add(std::vector<Expr>{a, neg(b)}); }
Expr mul(const Expr& a, const Expr& b) { return mul(std::vector<Expr>{a, b}); }

Expr div(const Expr& num, const Expr& den) {
  if (den.is_zero()) throw PreconditionError("division by the constant zero");
  Node n;
  n.kind = Kind::Div;
  n.args = {num, den};
  return make(std::move(n));
}

Expr neg(const Expr& a) {
  Node n;
  n.kind = Kind::Neg;
  n.args = {a};
  return make(std::move(n));
}

Expr pow(const Expr& base, const Sub& e) {
  Node n;
  n.kind = Kind::Pow;
  n.sub = e;
  n.args = {base};
  return make(std::move(n));
}

Expr binom(const Sub& top, const Sub& bottom) {
  Node n;
  n.kind = Kind::Binom;
  n.sub = top;
  n.sub2 = bottom;
  return make(std::move(n));
}

Expr sum(const std::string& var, const Sub& lo, const Sub& hi, const Expr& body) {
  Node n;
  n.kind = Kind::Sum;
  n.name = var;
  n.sub = lo;
  n.sub2 = hi;
  n.args = {body};
  return make(std::move(n));
}

Expr arctan(const Expr& a) {
  Node n;
  n.kind = Kind::Arctan;
  n.args = {a};
  return make(std::move(n));
}

Expr deriv_seq(const std::string& family, const Sub& s, const std::string& wrt) {
  Node n;
  n.kind = Kind::DerivSeq;
  n.name = family;
  n.sub = s;
  n.wrt = wrt;
  return make(std::move(n));
}

}  // namespace ex

Expr map_children(const Expr& e, const std::function<Expr(const Expr&)>& f) {
  if (e.args().empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.args().size());
  bool changed = false;
  for (const auto& a : e.args()) {
    kids.push_back(f(a));
    if (!kids.back().same_node(a)) changed = true;
  }
  if (!changed) return e;
  if (e.kind() == Kind::Add) return ex::add(std::move(kids));
  if (e.kind() == Kind::Mul) return ex::mul(std::move(kids));
  Node n = e.node();
  n.args = std::move(kids);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

namespace {

bool has_subscript(Kind k) {
  switch (k) {
    case Kind::Seq:
    case Kind::TauPow:
    case Kind::SigmaPow:
    case Kind::MinusOnePow:
    case Kind::Index:
    case Kind::Pow:
    case Kind::Binom:
    case Kind::Sum:
    case Kind::DerivSeq:
      return true;
    default:
      return false;
  }
}

Expr map_subs_rec(const Expr& e,
                  const std::function<Sub(const Sub&, const std::set<std::string>&)>& f,
                  std::set<std::string>& bound) {
  Node n = e.node();
  if (has_subscript(n.kind)) {
    n.sub = f(n.sub, bound);
    if (n.kind == Kind::Binom || n.kind == Kind::Sum) n.sub2 = f(n.sub2, bound);
  }
  bool inserted = false;
  if (n.kind == Kind::Sum) inserted = bound.insert(n.name).second;
  for (auto& a : n.args) a = map_subs_rec(a, f, bound);
  if (inserted) bound.erase(n.name);
  if (n.kind == Kind::Add) return ex::add(std::move(n.args));
  if (n.kind == Kind::Mul) return ex::mul(std::move(n.args));
  return Expr(std::make_shared<const Node>(std::move(n)));
}

}  // namespace

Expr map_subscripts(const Expr& e,
                    const std::function<Sub(const Sub&, const std::set<std::string>&)>& f) {
  std::set<std::string> bound;
  return map_subs_rec(e, f, bound);
}

bool any_node(const Expr& e, const std::function<bool(const Expr&)>& pred) {
  if (pred(e)) return true;
  for (const auto& a : e.args()) {
    if (any_node(a, pred)) return true;
  }
  return false;
}

bool contains_kind(const Expr& e, Kind k) {
  return any_node(e, [k](const Expr& x) { return x.kind() == k; });
}

std::set<std::string> families_used(const Expr& e) {
  std::set<std::string> out;
  any_node(e, [&](const Expr& x) {
    if (x.kind() == Kind::Seq || x.kind() == Kind::DerivSeq) out.insert(x.name());
    return false;
  });
  return out;
}

namespace {

void free_rec(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  auto take = [&](const Sub& s) {
    for (const auto& v : s.vars()) {
      if (!bound.count(v)) out.insert(v);
    }
  };
  if (has_subscript(e.kind())) {
    take(e.sub());
    if (e.kind() == Kind::Binom || e.kind() == Kind::Sum) take(e.sub2());
  }
  bool inserted = false;
  if (e.kind() == Kind::Sum) inserted = bound.insert(e.name()).second;
  for (const auto& a : e.args()) free_rec(a, bound, out);
  if (inserted) bound.erase(e.name());
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound, out;
  free_rec(e, bound, out);
  return out;
}

std::set<std::string> bound_vars(const Expr& e) {
  std::set<std::string> out;
  any_node(e, [&](const Expr& x) {
    if (x.kind() == Kind::Sum) out.insert(x.name());
    return false;
  });
  return out;
}

Expr substitute_indices(const Expr& e, const std::map<std::string, Sub>& bindings) {
  if (bindings.empty()) return e;
  Node n = e.node();
  if (has_subscript(n.kind)) {
    n.sub = n.sub.substitute(bindings);
    if (n.kind == Kind::Binom || n.kind == Kind::Sum) n.sub2 = n.sub2.substitute(bindings);
  }
  if (n.kind == Kind::Sum) {
    std::map<std::string, Sub> inner = bindings;
    inner.erase(n.name);
    std::set<std::string> body_free = free_vars(n.args[0]);
    for (const auto& [v, repl] : inner) {
      if (body_free.count(v) && repl.contains(n.name)) {
        throw PreconditionError("substituting " + v + " := " + repl.str() +
                                " would capture summation variable " + n.name);
      }
    }
    n.args[0] = substitute_indices(n.args[0], inner);
    return Expr(std::make_shared<const Node>(std::move(n)));
  }
  for (auto& a : n.args) a = substitute_indices(a, bindings);
  if (n.kind == Kind::Add) return ex::add(std::move(n.args));
  if (n.kind == Kind::Mul) return ex::mul(std::move(n.args));
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr substitute_index(const Expr& e, const std::string& var, const Sub& replacement) {
  return substitute_indices(e, {{var, replacement}});
}

}  // namespace fibdiff
