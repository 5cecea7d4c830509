#include <gtest/gtest.h>

#include "fibdiff/canonical.hpp"
#include "fibdiff/corpus.hpp"
#include "fibdiff/errors.hpp"
#include "fibdiff/parser.hpp"
#include "fibdiff/pipeline.hpp"
#include "fibdiff/printer.hpp"
#include "fibdiff/simplify.hpp"
#include "fibdiff/transforms.hpp"

using namespace fibdiff;

namespace {

Identity I(const std::string& text, const Context& ctx = Context::default_table()) { return parse_identity(text, ctx); }

Identity real_of(const std::string& text, const std::string& wrt, const Context& ctx = Context::default_table()) {
  return apply_real_part(differentiate(I(text, ctx), wrt));
}

Identity imag_of(const std::string& text, const std::string& wrt, const Context& ctx = Context::default_table()) {
  return apply_imag_part(differentiate(I(text, ctx), wrt));
}

bool has_markers(const Identity& id) {
  for (const Expr* side : {&id.lhs, &id.rhs}) {
    for (Kind k : {Kind::Pi, Kind::ImagUnit, Kind::LnTau, Kind::DerivSeq}) {
      if (contains_kind(*side, k)) return true;
    }
  }
  return false;
}

// Same identity up to a nonzero scalar and moving terms across.
bool same_identity(const Identity& a, const Identity& b) { return equivalent(a, b); }

Expr rename_family(const Expr& e, const std::string& from, const std::string& to) {
  return rewrite(e, [&](const Expr& n) -> std::optional<Expr> {
    if (n.kind() == Kind::Seq && n.name() == from) return ex::seq(to, n.sub());
    return std::nullopt;
  });
}

}  // namespace

TEST(RealPart, Examples) {
  EXPECT_EQ(print_identity(real_of("F[2k] = L[k]*F[k]", "k")), "2*L[2k] = L[k]^2 + 5*F[k]^2");
  Identity lucas = real_of("L[k] = F[k+1] + F[k-1]", "k");
  EXPECT_TRUE(same_identity(lucas, I("5*F[k] = L[k+1] + L[k-1]"))) << print_identity(lucas);
  Context hor = Context::default_table(Rational(2), Rational(-1));
  Identity conv = real_of("U[r]*W[k+1] + U[r-1]*W[k] = W[k+r]", "r", hor);
  EXPECT_TRUE(same_identity(conv, I("V[r]*W[k+1] + V[r-1]*W[k] = W[k+r+1] + W[k+r-1]", hor)))
      << print_identity(conv);
}

TEST(RealPart, RejectsNonUnitQ) {
  Context c = Context::default_table(Rational(1), Rational(-2));
  EXPECT_THROW(real_of("U[2k] = U[k]*V[k]", "k", c), PreconditionError);
}

TEST(ImagPart, Examples) {
  EXPECT_EQ(print_identity(imag_of("F[2k] = L[k]*F[k]", "k")), "2*beta^k = L[k] - sqrtD*F[k]");
  EXPECT_EQ(print_identity(imag_of("F[k+1]^2 + F[k]^2 = F[2k+1]", "k")),
            "F[k+1]*beta^(k+1) + F[k]*beta^k = beta^(2k+1)");
  EXPECT_EQ(print_identity(imag_of("F[r+1]*F[k] - F[r]*F[k+1] = (-1)^r*F[k-r]", "k")),
            "F[r+1]*beta^k - F[r]*beta^(k+1) = (-1)^r*beta^(k-r)");
}

TEST(ImagPart, RejectsPositiveQ) {
  Context pell = Context::default_table(Rational(3), Rational(1));
  EXPECT_THROW(imag_of("U[2k] = U[k]*V[k]", "k", pell), PreconditionError);
}

TEST(ImagPart, RejectsIntegerOnlyForms) {
  // (-1)^(k+r+1) agrees with (-1)^(k-r+1) only at integer r
  EXPECT_THROW(imag_of("F[k-r]*F[k+r] = F[k]^2 + (-1)^(k+r+1)*F[r]^2", "r"), PreconditionError);
  EXPECT_NO_THROW(imag_of("F[k-r]*F[k+r] = F[k]^2 + (-1)^(k-r+1)*F[r]^2", "r"));
  EXPECT_THROW(imag_of("F[k-2]*F[k-1]*F[k+1]*F[k+2] = F[k]^4 - 1", "k"), PreconditionError);
  EXPECT_NO_THROW(imag_of("F[k-2]*F[k-1]*F[k+1]*F[k+2] = F[k]^4 - (-1)^(2k)", "k"));
  EXPECT_TRUE(function_form_holds(I("F[k-r]*F[k+r] = F[k]^2 + (-1)^(k+r+1)*F[r]^2"), "k"));
  EXPECT_FALSE(function_form_holds(parse_identity("F[2k] = L[k]*F[k]", Context::default_table(), {Constraint::parse("k even")}), "k"));
}

TEST(ImagPart, RejectsArctanWithoutRealForm) {
  EXPECT_THROW(imag_of("arctan(1/F[2k+1]) = arctan(1/F[2k]) - arctan(1/F[2k+2])", "k"), PreconditionError);
}

TEST(ShiftNormalize, Examples) {
  Identity sid = imag_of("F[k+1]^2 + F[k]^2 = F[2k+1]", "k");
  Identity shifted = shift_normalize(sid, "s", Sub::var("k"));
  EXPECT_EQ(print_identity(shifted), "F[k+1]*beta^(s+1) + F[k]*beta^s = beta^(k+s+1)");
  EXPECT_TRUE(shifted.free_indices.count("s"));
  EXPECT_THROW(shift_normalize(sid, "k"), PreconditionError);
}

TEST(ShiftNormalize, ZeroShiftInstance) {
  Identity sid = imag_of("F[k+1]^2 + F[k]^2 = F[2k+1]", "k");
  Identity shifted = shift_normalize(sid, "s", Sub::var("k"));
  Identity back = substitute_index(shifted, "s", Sub::var("k"));
  EXPECT_TRUE(structurally_equal(simplify(back), simplify(sid)));
}

TEST(ConjugateSwap, Examples) {
  Identity sid = shift_normalize(imag_of("F[k+1]^2 + F[k]^2 = F[2k+1]", "k"), "s", Sub::var("k"));
  EXPECT_EQ(print_identity(conjugate_swap(sid)), "F[k+1]*alpha^(s+1) + F[k]*alpha^s = alpha^(k+s+1)");
  Identity radical = I("5*F[k]*beta^(k+r) + sqrtD*L[k]*beta^(k+r) = (-1)^k*2*sqrtD*beta^r");
  Identity swapped = conjugate_swap(radical);
  EXPECT_TRUE(same_identity(swapped, I("5*F[k]*alpha^(k+r) - sqrtD*L[k]*alpha^(k+r) = (-1)^(k-1)*2*sqrtD*alpha^r")))
      << print_identity(swapped);
}

TEST(ConjugateSwap, InvolutionAndPreservesValidity) {
  for (const char* text : {"F[k+1]^2 + F[k]^2 = F[2k+1]", "F[2k] = L[k]*F[k]", "5*F[k]^2 - L[k]^2 = (-1)^(k-1)*4",
                           "F[r+1]*F[k] - F[r]*F[k+1] = (-1)^r*F[k-r]"}) {
    Identity sid = imag_of(text, "k");
    EXPECT_TRUE(structurally_equal(conjugate_swap(conjugate_swap(sid)), sid)) << text;
    EXPECT_TRUE(prove_identity(conjugate_swap(sid)).proved) << text;
    EXPECT_TRUE(prove_identity(conjugate_swap(shift_normalize(sid, "s", Sub::var("k")))).proved) << text;
  }
}

TEST(BinetCombine, Examples) {
  Identity sid = shift_normalize(imag_of("F[k+1]^2 + F[k]^2 = F[2k+1]", "k"), "s", Sub::var("k"));
  EXPECT_EQ(print_identity(binet_combine(sid, "G")), "F[k+1]*G[s+1] + F[k]*G[s] = G[k+s+1]");
  Identity bare = I("beta^h = beta^h");
  Identity z = binet_combine(bare, "Z");
  EXPECT_TRUE(structurally_equal(z, I("Z[h] = Z[h]")));
  Identity radical = I("5*F[k]*beta^(k+r) + sqrtD*L[k]*beta^(k+r) = (-1)^k*2*sqrtD*beta^r");
  Identity g = binet_combine(radical, "G");
  EXPECT_TRUE(same_identity(g, I("5*F[k]*G[k+r] - L[k]*(G[k+r+1] + G[k+r-1]) = (-1)^(k-1)*2*(G[r+1] + G[r-1])")))
      << print_identity(g);
}

TEST(BinetCombine, Errors) {
  EXPECT_THROW(binet_combine(I("F[k]*alpha^k = beta^k"), "G"), PreconditionError);
  EXPECT_THROW(binet_combine(I("beta^k*beta^k = beta^(2k)"), "G"), PreconditionError);
  EXPECT_THROW(binet_combine(I("1/beta^k = beta^(-k)"), "G"), PreconditionError);
  EXPECT_THROW(binet_combine(I("U[k]*sigma^k = sigma^k*U[k]", Context::default_table(Rational(2), Rational(-3))), "G"),
               PreconditionError);
  EXPECT_THROW(binet_combine(I("G[k]*beta^k = beta^k*G[k]"), "G"), PreconditionError);
  EXPECT_THROW(binet_combine(I("F[k]*beta^k = beta^k*F[k]"), "F"), PreconditionError);
}

TEST(Simplify, Examples) {
  const Context ctx = Context::default_table();
  EXPECT_EQ(print_expr(simplify_expr(parse_expr("F[k+1] + F[k-1]"), ctx)), "L[k]");
  EXPECT_EQ(print_expr(simplify_expr(parse_expr("F[k] + 0"), ctx)), "F[k]");
  EXPECT_EQ(print_expr(simplify_expr(parse_expr("2*F[k]^3*L[k]"), ctx)), "2*F[k]^2*F[2k]");
  EXPECT_EQ(print_expr(simplify_expr(parse_expr("L[m]*F[n] + L[n]*F[m]"), ctx)), "2*F[m+n]");
}

TEST(Simplify, KeepsEvenMinusOnePowers) {
  const Context ctx = Context::default_table();
  std::string s = print_expr(simplify_expr(parse_expr("(-1)^(2k)*F[k]"), ctx));
  EXPECT_NE(s.find("(-1)^(2k)"), std::string::npos) << s;
}

// Every provable corpus identity yields provable offspring through both components.
TEST(TransformSoundness, CorpusMetaProperty) {
  auto all = load_corpus(default_corpus_dir());
  int real_ok = 0, imag_ok = 0;
  for (const auto& e : all) {
    if (e.mode != "prove" || !e.params.empty() || !provable_shape(e.identity)) continue;
    if (!e.identity.ctx.golden()) continue;
    std::set<std::string> taken = families_used(e.identity.lhs);
    auto r = families_used(e.identity.rhs);
    taken.insert(r.begin(), r.end());
    std::string fresh = e.identity.ctx.fresh_family("Z", taken);
    for (const auto& wrt : e.identity.free_indices) {
      for (Component c : {Component::Real, Component::Imag}) {
        DeriveConfig cfg;
        cfg.wrt = wrt;
        cfg.component = c;
        if (c == Component::Imag) cfg.combine = fresh;
        try {
          DeriveResult d = run_derive(e.identity, cfg);
          EXPECT_TRUE(d.check.ok) << e.id << " wrt " << wrt << " " << component_name(c) << ": "
                                  << print_identity(d.output) << " " << d.check.status;
          EXPECT_FALSE(has_markers(d.output)) << e.id;
          (c == Component::Real ? real_ok : imag_ok)++;
        } catch (const NoNewIdentity&) {
        } catch (const PreconditionError&) {
        }
      }
    }
  }
  EXPECT_GE(real_ok, 25);
  EXPECT_GE(imag_ok, 25);
}

// Recombination with Z0 = 0, Z1 = 1 collapses onto the Fibonacci instance.
TEST(TransformSoundness, CombineSpecializesToFibonacci) {
  const char* sources[] = {"F[k+1]^2 + F[k]^2 = F[2k+1]", "F[r+1]*F[k] - F[r]*F[k+1] = (-1)^r*F[k-r]",
                           "F[2k] = L[k]*F[k]", "5*F[k]^2 - L[k]^2 = (-1)^(k-1)*4",
                           "F[k+m] + (-1)^m*F[k-m] = L[m]*F[k]", "F[k]^2 - F[k+r]*F[k-r] = (-1)^(k-r)*F[r]^2"};
  int checked = 0;
  for (const char* text : sources) {
    DeriveConfig cfg;
    cfg.wrt = "k";
    cfg.component = Component::Imag;
    cfg.combine = "Z";
    DeriveResult d = run_derive(I(text), cfg);
    ASSERT_TRUE(d.check.ok) << text;
    Identity fib = d.output.with_sides(rename_family(d.output.lhs, "Z", "F"), rename_family(d.output.rhs, "Z", "F"));
    ProofVerdict v = prove_identity(fib);
    EXPECT_TRUE(v.proved) << text << " -> " << print_identity(fib);
    ++checked;
  }
  EXPECT_GE(checked, 5);
}
