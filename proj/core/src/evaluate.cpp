#include "fibdiff/evaluate.hpp"

#include "fibdiff/errors.hpp"

namespace fibdiff {

std::string ExactValue::str() const {
  if (den.is_constant() && den.constant() == QuadExt(den.field(), Rational(1))) return num.str();
  return "(" + num.str() + ")/(" + den.str() + ")";
}

bool same_value(const ExactValue& a, const ExactValue& b) { return a.num * b.den == b.num * a.den; }

Evaluator::Evaluator(const Context& ctx, std::map<std::string, Rational> seed_values)
    : ctx_(ctx), field_(ctx.field()), seeds_(std::move(seed_values)) {}

SeedPoly Evaluator::term(const std::string& family, long j) {
  auto it = tables_.find(family);
  if (it == tables_.end()) {
    SequenceSpec spec = ctx_.spec(family);
    if (!seeds_.empty()) {
      spec.seed0 = spec.seed0.partial_substitute(seeds_);
      spec.seed1 = spec.seed1.partial_substitute(seeds_);
    }
    it = tables_.emplace(family, std::make_unique<TermTable>(std::move(spec))).first;
  }
  return it->second->at(j);
}

long Evaluator::index(const Sub& s, const std::map<std::string, long>& env) const {
  auto v = s.eval(env);
  if (!v) throw PreconditionError("cannot evaluate subscript " + s.str());
  return *v;
}

ExactValue Evaluator::constant(const QuadExt& c) const {
  return {SeedPoly(c), SeedPoly(field_, Rational(1))};
}

ExactValue Evaluator::normalize(SeedPoly num, SeedPoly den) const {
  if (den.is_zero()) throw ZeroDenominator("denominator vanishes");
  if (den.is_constant()) {
    QuadExt inv = den.constant().inverse();
    return {num * inv, SeedPoly(field_, Rational(1))};
  }
  return {std::move(num), std::move(den)};
}

ExactValue Evaluator::eval(const Expr& e, const std::map<std::string, long>& env) {
  switch (e.kind()) {
    case Kind::Const: return constant(QuadExt(field_, e.value()));
    case Kind::SqrtD: return constant(ctx_.sqrt_value());
    case Kind::Param: return constant(QuadExt(field_, e.name() == "p" ? ctx_.p : ctx_.q));
    case Kind::Index: return constant(QuadExt(field_, Rational(index(e.sub(), env))));
    case Kind::Seq: return {term(e.name(), index(e.sub(), env)), SeedPoly(field_, Rational(1))};
    case Kind::TauPow: return constant(ctx_.tau_value().pow(index(e.sub(), env)));
    case Kind::SigmaPow: return constant(ctx_.sigma_value().pow(index(e.sub(), env)));
    case Kind::MinusOnePow: {
      long h = index(e.sub(), env);
      return constant(QuadExt(field_, Rational(h % 2 == 0 ? 1 : -1)));
    }
    case Kind::Add: {
      ExactValue acc = constant(QuadExt(field_));
      for (const auto& a : e.args()) {
        ExactValue v = eval(a, env);
        if (acc.den == v.den) {
          acc.num += v.num;
        } else {
          acc = normalize(acc.num * v.den + v.num * acc.den, acc.den * v.den);
        }
      }
      return acc;
    }
    case Kind::Mul: {
      ExactValue acc = constant(QuadExt(field_, Rational(1)));
      for (const auto& a : e.args()) {
        ExactValue v = eval(a, env);
        acc = normalize(acc.num * v.num, acc.den * v.den);
        if (acc.num.is_zero()) break;
      }
      return acc;
    }
    case Kind::Neg: {
      ExactValue v = eval(e.arg(0), env);
      return {-v.num, v.den};
    }
    case Kind::Div: {
      ExactValue n = eval(e.arg(0), env);
      ExactValue d = eval(e.arg(1), env);
      return normalize(n.num * d.den, n.den * d.num);
    }
    case Kind::Pow: {
      long h = index(e.sub(), env);
      ExactValue b = eval(e.arg(0), env);
      if (h >= 0) return normalize(b.num.pow(static_cast<unsigned>(h)), b.den.pow(static_cast<unsigned>(h)));
      return normalize(b.den.pow(static_cast<unsigned>(-h)), b.num.pow(static_cast<unsigned>(-h)));
    }
    case Kind::Binom:
      return constant(QuadExt(field_, binomial(index(e.sub(), env), index(e.sub2(), env))));
    case Kind::Sum: {
      long lo = index(e.sub(), env);
      long hi = index(e.sub2(), env);
      auto inner = env;
      ExactValue acc = constant(QuadExt(field_));
      for (long j = lo; j <= hi; ++j) {
        inner[e.name()] = j;
        ExactValue v = eval(e.arg(0), inner);
        if (acc.den == v.den) {
          acc.num += v.num;
        } else {
          acc = normalize(acc.num * v.den + v.num * acc.den, acc.den * v.den);
        }
      }
      return acc;
    }
    case Kind::Arctan: throw UnsupportedForProof("arctan has no exact value");
    default: throw PreconditionError("cannot evaluate a transcendental marker");
  }
}

}  // namespace fibdiff
