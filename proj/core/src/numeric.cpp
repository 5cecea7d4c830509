#include "fibdiff/numeric.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <chrono>
#include <sstream>

#include "fibdiff/errors.hpp"
#include "fibdiff/evaluate.hpp"

namespace fibdiff {

using Real = boost::multiprecision::mpfr_float;

namespace {

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision()) { Real::default_precision(digits); }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real pi_value() { return boost::multiprecision::acos(Real(-1)); }

Real to_real(const Rational& r) { return Real(r.numerator().get_str()) / Real(r.denominator().get_str()); }

Real to_real(const QuadExt& x) {
  Real v = to_real(x.a());
  if (!x.b().is_zero()) v += to_real(x.b()) * boost::multiprecision::sqrt(to_real(x.field().radicand()));
  return v;
}

Real to_real(const SeedPoly& p) {
  if (!p.is_constant()) throw PreconditionError("numeric evaluation needs concrete seeds, got " + p.str());
  return to_real(p.constant());
}

struct Skip {};

class NumericEvaluator {
 public:
  NumericEvaluator(const Context& ctx, std::map<std::string, Rational> seeds) : ctx_(ctx), exact_(ctx, std::move(seeds)) {}

  Real eval(const Expr& e, const std::map<std::string, long>& env) {
    switch (e.kind()) {
      case Kind::Pi: return pi_value();
      case Kind::LnTau: return boost::multiprecision::log(to_real(ctx_.tau_value()));
      case Kind::Arctan: {
        Real a = eval(e.arg(0), env);
        arctan_args_.push_back(a);
        return boost::multiprecision::atan(a);
      }
      case Kind::Add: {
        Real acc = 0;
        for (const auto& a : e.args()) acc += eval(a, env);
        return acc;
      }
      case Kind::Mul: {
        Real acc = 1;
        for (const auto& a : e.args()) acc *= eval(a, env);
        return acc;
      }
      case Kind::Neg: return -eval(e.arg(0), env);
      case Kind::Div: {
        Real n = eval(e.arg(0), env);
        Real d = eval(e.arg(1), env);
        if (is_tiny(d)) throw Skip{};
        return n / d;
      }
      case Kind::Pow: {
        auto h = e.sub().eval(env);
        if (!h) throw PreconditionError("cannot evaluate exponent " + e.sub().str());
        Real b = eval(e.arg(0), env);
        if (*h < 0 && is_tiny(b)) throw Skip{};
        return boost::multiprecision::pow(b, Real(*h));
      }
      case Kind::Sum: {
        auto lo = e.sub().eval(env);
        auto hi = e.sub2().eval(env);
        if (!lo || !hi) throw PreconditionError("cannot evaluate sum bounds");
        auto inner = env;
        Real acc = 0;
        for (long j = *lo; j <= *hi; ++j) {
          inner[e.name()] = j;
          acc += eval(e.arg(0), inner);
        }
        return acc;
      }
      case Kind::ImagUnit:
      case Kind::DerivSeq:
        throw PreconditionError("numeric evaluation of a complex marker");
      default:
        try {
          ExactValue v = exact_.eval(e, env);
          return to_real(v.num) / to_real(v.den);
        } catch (const ZeroDenominator&) {
          throw Skip{};
        }
    }
  }

  std::vector<Real> take_arctan_args() { return std::exchange(arctan_args_, {}); }

 private:
  static bool is_tiny(const Real& x) {
    return boost::multiprecision::abs(x) < boost::multiprecision::pow(Real(10), -Real(Real::default_precision() - 2));
  }

  const Context& ctx_;
  Evaluator exact_;
  std::vector<Real> arctan_args_;
};

std::string show(const Real& x, unsigned digits) { return x.str(static_cast<std::streamsize>(digits)); }

bool close(const Real& a, const Real& b, const Real& tol) {
  Real scale = std::max<Real>({Real(1), boost::multiprecision::abs(a), boost::multiprecision::abs(b)});
  return boost::multiprecision::abs(a - b) <= tol * scale;
}

}  // namespace

std::map<std::string, Rational> sample_seeds(const Context& ctx, const std::set<std::string>& families,
                                             const std::map<std::string, Rational>& given) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::map<std::string, Rational> out = given;
  std::size_t next = 0;
  for (const auto& f : families) {
    const FamilyDecl* d = ctx.find(f);
    if (!d || !role_is_symbolic(d->role)) continue;
    for (int w = 0; w < 2; ++w) {
      std::string s = seed_symbol(f, w);
      if (!out.count(s)) out[s] = Rational(primes[next++ % std::size(primes)]);
    }
  }
  return out;
}

VerifyReport numeric_verify(const Identity& id, const NumericOptions& opts) {
  if (opts.precision < 8) throw PreconditionError("numeric precision must be at least 8 digits");
  auto start = std::chrono::steady_clock::now();
  PrecisionScope scope(opts.precision + 10);
  VerifyReport rep;
  rep.id = id.provenance;
  rep.method = "numeric";
  rep.grid = default_grid(id, opts.grid);
  auto fams = families_used(id.lhs);
  auto fr = families_used(id.rhs);
  fams.insert(fr.begin(), fr.end());
  auto seeds = sample_seeds(id.ctx, fams, opts.seeds);
  for (const auto& [s, v] : seeds) {
    if (!opts.seeds.count(s)) rep.notes.push_back("seed " + s + " sampled as " + v.str());
  }
  std::vector<Identity> variants;
  if (opts.params.empty()) {
    variants.push_back(id);
  } else {
    for (const auto& s : opts.params) {
      variants.push_back(with_params(id, s));
      rep.param_samples.push_back(s.str());
    }
  }
  auto points = admissible_points(id, rep.grid);
  if (points.empty()) throw PreconditionError("no admissible grid point");
  Real tol = boost::multiprecision::pow(Real(10), -Real(static_cast<long>(opts.precision) - 4));
  Real pi = pi_value();
  for (std::size_t v = 0; v < variants.size(); ++v) {
    NumericEvaluator ev(variants[v].ctx, seeds);
    for (const auto& pt : points) {
      ++rep.cases;
      Real l, r;
      try {
        l = ev.eval(variants[v].lhs, pt);
        r = ev.eval(variants[v].rhs, pt);
      } catch (const Skip&) {
        ++rep.skipped;
        ev.take_arctan_args();
        continue;
      }
      ev.take_arctan_args();
      if (close(l, r, tol)) {
        ++rep.pass;
        continue;
      }
      ++rep.fail;
      Real turns = (l - r) / pi;
      Real nearest = boost::multiprecision::round(turns);
      if (nearest != 0 && boost::multiprecision::abs(turns - nearest) < tol) {
        std::ostringstream os;
        os << "branch crossing at";
        for (const auto& [k, x] : pt) os << " " << k << "=" << x;
        os << ": sides differ by " << nearest.str() << "*pi";
        rep.notes.push_back(os.str());
      }
      if (!rep.counterexample) {
        Counterexample c;
        c.point = pt;
        if (!opts.params.empty()) c.params = opts.params[v].str();
        c.lhs = show(l, opts.precision);
        c.rhs = show(r, opts.precision);
        rep.counterexample = c;
      }
    }
  }
  if (rep.skipped) rep.notes.push_back(std::to_string(rep.skipped) + " instances skipped: a denominator vanishes");
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

struct Cx {
  Real re;
  Real im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx scale(const Cx& a, const Real& s) { return {a.re * s, a.im * s}; }

// base^x on the principal branch, base real and nonzero.
Cx cpow(const Real& base, const Real& x) {
  Real mag = boost::multiprecision::exp(x * boost::multiprecision::log(boost::multiprecision::abs(base)));
  if (base > 0) return {mag, Real(0)};
  Real t = pi_value() * x;
  return {mag * boost::multiprecision::cos(t), mag * boost::multiprecision::sin(t)};
}

}  // namespace

VerifyReport check_derivative_facts(const Context& ctx, const std::string& family, long lo, long hi,
                                    unsigned precision, double tolerance) {
  if (precision < 8) throw PreconditionError("numeric precision must be at least 8 digits");
  auto start = std::chrono::steady_clock::now();
  PrecisionScope scope(precision);
  const FamilyDecl* decl = ctx.find(family);
  if (!decl) throw PreconditionError("undeclared family " + family);
  bool real_rule = ctx.q == Rational(-1);
  bool imag_rule = ctx.q.sign() < 0;
  if (!real_rule && !imag_rule) throw PreconditionError("no derivative fact applies when q > 0");

  auto seeds = sample_seeds(ctx, {family});
  SequenceSpec spec = ctx.spec(family);
  spec.seed0 = spec.seed0.partial_substitute(seeds);
  spec.seed1 = spec.seed1.partial_substitute(seeds);
  BinetPair ab = binet_coefficients(spec);
  Real a = to_real(ab.A), b = to_real(ab.B);
  Real tau = to_real(ctx.tau_value()), sigma = to_real(ctx.sigma_value());
  Real root = to_real(ctx.sqrt_value());
  Real ln_tau = boost::multiprecision::log(tau);
  Real pi = pi_value();
  auto cont = [&](const Real& x) { return scale(cpow(tau, x), a) + scale(cpow(sigma, x), b); };
  Real h = boost::multiprecision::pow(Real(10), -Real(static_cast<long>(precision) / 3));

  TermTable self(spec);
  auto companion = [&](FamilyRole role) {
    SequenceSpec s = SequenceSpec::make("_", role, ctx.p, ctx.q, ctx.field());
    return TermTable(s);
  };
  std::optional<TermTable> other;
  if (decl->role == FamilyRole::Fibonacci) other = companion(FamilyRole::Lucas);
  if (decl->role == FamilyRole::Lucas) other = companion(FamilyRole::Fibonacci);
  if (decl->role == FamilyRole::LucasU) other = companion(FamilyRole::LucasV);
  if (decl->role == FamilyRole::LucasV) other = companion(FamilyRole::LucasU);

  VerifyReport rep;
  rep.id = "derivative facts for " + family;
  rep.method = "numeric";
  rep.grid = {{"j", lo, hi}};
  Real tol(tolerance);
  for (long j = lo; j <= hi; ++j) {
    Cx d = scale(cont(Real(j) + h) - cont(Real(j) - h), 1 / (2 * h));
    auto record = [&](const char* part, const Real& got, const Real& want) {
      ++rep.cases;
      if (close(got, want, tol)) {
        ++rep.pass;
        return;
      }
      ++rep.fail;
      if (!rep.counterexample) rep.counterexample = Counterexample{{{"j", j}}, part, show(got, 20), show(want, 20)};
    };
    if (real_rule) {
      Real want;
      switch (decl->role) {
        case FamilyRole::Fibonacci:
        case FamilyRole::LucasU:
          want = to_real(other->at(j)) / root;
          break;
        case FamilyRole::Lucas:
        case FamilyRole::LucasV:
          want = root * to_real(other->at(j));
          break;
        default:
          want = (to_real(self.at(j + 1)) + to_real(self.at(j - 1))) / root;
      }
      record("real part", d.re, want * ln_tau);
    }
    if (imag_rule) record("imaginary part", d.im, pi * b * boost::multiprecision::pow(sigma, Real(j)));
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace fibdiff
