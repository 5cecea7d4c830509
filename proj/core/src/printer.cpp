#include "fibdiff/printer.hpp"

#include "fibdiff/errors.hpp"
#include "fibdiff/parser.hpp"

namespace fibdiff {

namespace {

enum Prec { kAdd = 1, kMul = 2, kUnary = 3, kPow = 4, kAtom = 5 };

std::string exponent_str(const Sub& s) {
  if (auto c = s.as_constant(); c && *c >= 0) return std::to_string(*c);
  if (auto v = s.as_var()) return *v;
  return "(" + s.str() + ")";
}

bool is_negative_term(const Expr& e) {
  if (e.is_const()) return e.value().sign() < 0;
  if (e.kind() == Kind::Neg) return true;
  if (e.kind() == Kind::Mul && e.arg(0).is_const()) return e.arg(0).value().sign() < 0;
  return false;
}

class Printer {
 public:
  explicit Printer(const PrintOptions& o) : o_(o) {}

  std::string print(const Expr& e) { return str(e); }

 private:
  std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

  // Precedence of the printed form of e, used by parents to decide on parentheses.
  int prec(const Expr& e) const {
    switch (e.kind()) {
      case Kind::Add: return kAdd;
      case Kind::Mul:
      case Kind::Div: return kMul;
      case Kind::Neg: return kUnary;
      case Kind::Const:
        if (e.value().sign() < 0) return kUnary;
        return e.value().is_integer() ? kAtom : kMul;
      case Kind::Index: return kAtom;
      case Kind::Pow: return kPow;
      default: return kAtom;
    }
  }

  std::string str(const Expr& e) {
    switch (e.kind()) {
      case Kind::Const: return e.value().str();
      case Kind::Seq: return e.name() + "[" + e.sub().str() + "]";
      case Kind::TauPow: return std::string(o_.golden ? "alpha" : "tau") + "^" + exponent_str(e.sub());
      case Kind::SigmaPow: return std::string(o_.golden ? "beta" : "sigma") + "^" + exponent_str(e.sub());
      case Kind::MinusOnePow: return "(-1)^" + exponent_str(e.sub());
      case Kind::SqrtD: return "sqrtD";
      case Kind::Param: return e.name();
      case Kind::Pi: marker_check("pi"); return "pi";
      case Kind::LnTau: marker_check("ln"); return o_.golden ? "ln(alpha)" : "ln(tau)";
      case Kind::ImagUnit: marker_check("i"); return "i";
      case Kind::DerivSeq:
        marker_check("derivative marker");
        return "d(" + e.name() + "[" + e.sub().str() + "])/d" + e.node().wrt;
      case Kind::Index: {
        if (auto v = e.sub().as_var()) return *v;
        if (auto c = e.sub().as_constant(); c && *c >= 0) return std::to_string(*c);
        return "(" + str(sub_to_expr(e.sub())) + ")";
      }
      case Kind::Add: {
        std::string out;
        for (std::size_t i = 0; i < e.args().size(); ++i) {
          const Expr& t = e.arg(i);
          if (i == 0) {
            out = str(t);
          } else if (is_negative_term(t)) {
            Expr pos = negate(t);
            out += " - " + wrap(str(pos), prec(pos) <= kAdd);
          } else {
            out += " + " + str(t);
          }
        }
        return out;
      }
      case Kind::Mul: {
        if (e.arg(0).is_const() && e.arg(0).value() == Rational(-1)) {
          std::vector<Expr> rest(e.args().begin() + 1, e.args().end());
          Expr r = ex::mul(std::move(rest));
          bool paren = prec(r) < kMul || prec(r) == kUnary || r.kind() == Kind::Div ||
                       (r.kind() == Kind::Mul && (r.arg(0).kind() == Kind::Div || r.arg(0).is_const()));
          return "-" + wrap(str(r), paren);
        }
        std::string out;
        for (std::size_t i = 0; i < e.args().size(); ++i) {
          const Expr& f = e.arg(i);
          int p = prec(f);
          bool paren = p <= kAdd || (i > 0 && p <= kUnary && f.kind() != Kind::Pow) ||
                       (i > 0 && f.kind() == Kind::Div);
          if (i > 0) out += "*";
          out += wrap(str(f), paren);
        }
        return out;
      }
      case Kind::Div: {
        const Expr& n = e.arg(0);
        const Expr& d = e.arg(1);
        bool num_paren = prec(n) <= kAdd;
        bool den_paren = prec(d) < kPow;
        return wrap(str(n), num_paren) + "/" + wrap(str(d), den_paren);
      }
      case Kind::Neg: {
        const Expr& x = e.arg(0);
        return "-" + wrap(str(x), prec(x) <= kUnary);
      }
      case Kind::Pow: {
        const Expr& b = e.arg(0);
        return wrap(str(b), prec(b) < kAtom) + "^" + exponent_str(e.sub());
      }
      case Kind::Binom: return "binom(" + e.sub().str() + "," + e.sub2().str() + ")";
      case Kind::Sum:
        return "sum(" + e.name() + "," + e.sub().str() + "," + e.sub2().str() + ", " + str(e.arg(0)) + ")";
      case Kind::Arctan: return "arctan(" + str(e.arg(0)) + ")";
    }
    return "?";
  }

  void marker_check(const char* what) const {
    if (!o_.allow_markers) throw PreconditionError(std::string("cannot print ") + what + " in an identity");
  }

  const PrintOptions& o_;
};

}  // namespace

Expr sub_to_expr(const Sub& s) {
  std::vector<Expr> terms;
  for (const auto& [mono, c] : s.terms()) {
    std::vector<Expr> factors;
    if (c != 1 || mono.empty()) factors.push_back(ex::constant(Rational(c)));
    for (const auto& [atom, e] : mono) {
      Expr a = atom.is_var() ? ex::index(Sub::var(atom.var))
                             : ex::pow(ex::constant(Rational(atom.base)), *atom.exponent);
      for (int i = 0; i < e; ++i) factors.push_back(a);
    }
    terms.push_back(ex::mul(std::move(factors)));
  }
  return ex::add(std::move(terms));
}

std::string print_expr(const Expr& e, const PrintOptions& opts) {
  Printer p(opts);
  return p.print(e);
}

std::string print_identity(const Identity& id) {
  PrintOptions o;
  o.golden = id.ctx.golden();
  return print_expr(id.lhs, o) + " = " + print_expr(id.rhs, o);
}

std::string print_form(const Expr& lhs, const Expr& rhs, const Context& ctx) {
  PrintOptions o;
  o.golden = ctx.golden();
  o.allow_markers = true;
  return print_expr(lhs, o) + " = " + print_expr(rhs, o);
}

}  // namespace fibdiff
