#include "fibdiff/differentiate.hpp"

#include "fibdiff/errors.hpp"
#include "fibdiff/printer.hpp"
#include "fibdiff/simplify.hpp"

namespace fibdiff {

namespace {

Expr zero() { return ex::constant(Rational(0)); }

Expr times(const Sub& factor, const Expr& e) {
  if (factor.is_zero()) return zero();
  if (auto c = factor.as_constant(); c && *c == 1) return e;
  return ex::mul(sub_to_expr(factor), e);
}

class Differentiator {
 public:
  explicit Differentiator(std::string k) : k_(std::move(k)) {}

  Expr d(const Expr& e) {
    if (!free_vars(e).count(k_)) {
      if (e.kind() == Kind::DerivSeq) throw PreconditionError("expression is already differentiated");
      return zero();
    }
    switch (e.kind()) {
      case Kind::Seq:
        return times(e.sub().derivative(k_), ex::deriv_seq(e.name(), e.sub(), k_));
      case Kind::TauPow:
      case Kind::SigmaPow:
        throw PreconditionError("cannot differentiate a raw tau/sigma power in " + k_ +
                                "; recombine it into sequence terms first");
      case Kind::MinusOnePow:
        return times(e.sub().derivative(k_),
                     ex::mul({ex::minus_one_pow(e.sub()), ex::imag_unit(), ex::pi()}));
      case Kind::Index:
        return sub_to_expr(e.sub().derivative(k_));
      case Kind::Add: {
        std::vector<Expr> terms;
        for (const auto& a : e.args()) {
          Expr t = d(a);
          if (!t.is_zero()) terms.push_back(t);
        }
        return ex::add(std::move(terms));
      }
      case Kind::Mul: {
        std::vector<Expr> terms;
        for (std::size_t i = e.args().size(); i-- > 0;) {
          Expr di = d(e.arg(i));
          if (di.is_zero()) continue;
          std::vector<Expr> f;
          for (std::size_t j = 0; j < e.args().size(); ++j) f.push_back(j == i ? di : e.arg(j));
          terms.push_back(ex::mul(std::move(f)));
        }
        return ex::add(std::move(terms));
      }
      case Kind::Div: {
        const Expr& n = e.arg(0);
        const Expr& den = e.arg(1);
        Expr dn = d(n);
        Expr dd = d(den);
        std::vector<Expr> num;
        if (!dn.is_zero()) num.push_back(ex::mul(dn, den));
        if (!dd.is_zero()) num.push_back(ex::mul({ex::constant(Rational(-1)), n, dd}));
        return ex::div(ex::add(std::move(num)), ex::pow(den, Sub(2)));
      }
      case Kind::Neg:
        return ex::mul(ex::constant(Rational(-1)), d(e.arg(0)));
      case Kind::Pow: {
        if (e.sub().contains(k_)) {
          throw PreconditionError("index " + k_ + " occurs in an exponent; unsupported");
        }
        Expr db = d(e.arg(0));
        if (db.is_zero()) return zero();
        return times(e.sub(), ex::mul(ex::pow(e.arg(0), e.sub() - Sub(1)), db));
      }
      case Kind::Binom:
        throw PreconditionError("index " + k_ + " occurs inside a binomial coefficient");
      case Kind::Sum: {
        if (e.sub().contains(k_) || e.sub2().contains(k_)) {
          throw PreconditionError("index " + k_ + " occurs in summation bounds");
        }
        Expr body = d(e.arg(0));
        if (body.is_zero()) return zero();
        return ex::sum(e.name(), e.sub(), e.sub2(), body);
      }
      case Kind::Arctan: {
        const Expr& u = e.arg(0);
        Expr du = d(u);
        if (du.is_zero()) return zero();
        return ex::div(du, ex::add(ex::constant(Rational(1)), ex::pow(u, Sub(2))));
      }
      case Kind::DerivSeq:
        throw PreconditionError("expression is already differentiated");
      default:
        return zero();
    }
  }

 private:
  std::string k_;
};

}  // namespace

Expr differentiate_expr(const Expr& e, const std::string& k) {
  Differentiator d(k);
  return d.d(e);
}

DerivedForm differentiate(const Identity& id, const std::string& k) {
  if (!id.free_indices.count(k)) {
    throw PreconditionError("index " + k + " is not a free index of the identity");
  }
  SimplifyOptions opts;
  opts.identity_rules = false;
  Expr l = simplify_expr(differentiate_expr(id.lhs, k), id.ctx, opts);
  Expr r = simplify_expr(differentiate_expr(id.rhs, k), id.ctx, opts);
  return DerivedForm{l, r, k, id};
}

}  // namespace fibdiff
