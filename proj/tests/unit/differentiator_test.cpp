#include <gtest/gtest.h>

#include "fibdiff/differentiate.hpp"
#include "fibdiff/errors.hpp"
#include "fibdiff/parser.hpp"
#include "fibdiff/printer.hpp"
#include "fibdiff/simplify.hpp"
#include "gen.hpp"

using namespace fibdiff;
using fibdiff::testing::Gen;

namespace {

const Context& ctx() {
  static const Context c = Context::default_table();
  return c;
}

::testing::AssertionResult same_form(const Expr& a, const Expr& b) {
  SimplifyOptions o;
  o.identity_rules = false;
  o.sort = true;
  Expr sa = simplify_expr(a, ctx(), o), sb = simplify_expr(b, ctx(), o);
  if (sa == sb || simplify_expr(ex::sub(sa, sb), ctx(), o).is_zero()) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "got " << print_expr(sa, {true, true}) << "\n  want "
                                       << print_expr(sb, {true, true});
}

Expr D(const std::string& fam, const std::string& sub, const std::string& wrt) {
  return ex::deriv_seq(fam, parse_subscript(sub), wrt);
}
Expr P(const std::string& text) { return parse_expr(text); }

bool markers_consistent(const Expr& e, const std::string& wrt) {
  return !any_node(e, [&](const Expr& n) {
    if (n.kind() != Kind::DerivSeq) return false;
    return n.node().wrt != wrt;
  });
}

}  // namespace

TEST(Differentiate, DoubleAngle) {
  DerivedForm df = differentiate(parse_identity("F[2k] = L[k]*F[k]"), "k");
  EXPECT_TRUE(same_form(df.lhs, ex::mul(ex::constant(2), D("F", "2k", "k"))));
  EXPECT_TRUE(same_form(df.rhs, ex::add(ex::mul(P("L[k]"), D("F", "k", "k")), ex::mul(P("F[k]"), D("L", "k", "k")))));
  EXPECT_EQ(df.wrt, "k");
}

TEST(Differentiate, Symmetric) {
  DerivedForm df = differentiate(parse_identity("F[m] = F[m]"), "m");
  EXPECT_TRUE(same_form(df.lhs, D("F", "m", "m")));
  EXPECT_TRUE(same_form(df.rhs, D("F", "m", "m")));
}

TEST(Differentiate, MinusOnePowerGivesImaginaryUnit) {
  DerivedForm df = differentiate(parse_identity("F[s]*G[k+r] + (-1)^(r-1)*F[s-r]*G[k] = F[r]*G[k+s]"), "r");
  Expr sign = P("(-1)^(r-1)");
  Expr expected = ex::add({ex::mul(P("F[s]"), D("G", "k+r", "r")),
                           ex::mul({sign, ex::imag_unit(), ex::pi(), P("F[s-r]*G[k]")}),
                           ex::mul({ex::constant(-1), sign, D("F", "s-r", "r"), P("G[k]")})});
  EXPECT_TRUE(same_form(df.lhs, expected));
  EXPECT_TRUE(same_form(df.rhs, ex::mul(D("F", "r", "r"), P("G[k+s]"))));
}

TEST(Differentiate, Arctan) {
  Expr d = differentiate_expr(P("arctan(1/F[2k])"), "k");
  // d/dk arctan(u) = u'/(1 + u^2), u' = -2 DF[2k]/F[2k]^2
  Expr u = P("1/F[2k]");
  Expr du = ex::div(ex::mul(ex::constant(-2), D("F", "2k", "k")), P("F[2k]^2"));
  Expr expected = ex::div(du, ex::add(ex::constant(1), ex::pow(u, Sub(2))));
  EXPECT_TRUE(same_form(d, expected));
}

TEST(Differentiate, Errors) {
  EXPECT_THROW(differentiate(parse_identity("F[k] = F[k]"), "m"), PreconditionError);
  EXPECT_THROW(differentiate(parse_identity("sum(j,0,k, F[j]) = F[k+2] - 1"), "k"), PreconditionError);
  EXPECT_THROW(differentiate(parse_identity("F[2^k] = F[2^k]"), "k"), PreconditionError);
  EXPECT_THROW(differentiate(parse_identity("alpha^k = (L[k] + sqrtD*F[k])/2"), "k"), PreconditionError);
}

TEST(Differentiate, BinomialIsConstant) {
  DerivedForm df = differentiate(parse_identity("binom(n,2)*F[k] = binom(n,2)*F[k]"), "k");
  EXPECT_TRUE(same_form(df.lhs, ex::mul(P("binom(n,2)"), D("F", "k", "k"))));
}

TEST(DifferentiateProperty, ChainFactor) {
  Gen g(41);
  for (int i = 0; i < 200; ++i) {
    long c = g.integer(-5, 5), m = g.integer(-3, 3), r = g.integer(-6, 6);
    Sub h = Sub(c) * Sub::var("k") + Sub(m) * Sub::var("m") + Sub(r);
    if (c == 0) continue;
    Expr d = differentiate_expr(ex::seq("F", h), "k");
    ASSERT_TRUE(same_form(d, ex::mul(ex::constant(c), ex::deriv_seq("F", h, "k"))));
  }
}

TEST(DifferentiateProperty, LinearityAndProductSymmetry) {
  Gen g(42);
  const std::vector<std::string> fams{"F", "L", "G"};
  const std::vector<std::string> subs{"k", "k+1", "2k-1", "k+m", "m-k", "3m", "3", "-k"};
  for (int i = 0; i < 300; ++i) {
    Expr a = P(g.expr_text(fams, subs)), b = P(g.expr_text(fams, subs));
    Expr da = differentiate_expr(a, "k"), db = differentiate_expr(b, "k");
    ASSERT_TRUE(same_form(differentiate_expr(ex::add(a, b), "k"), ex::add(da, db)));
    ASSERT_TRUE(same_form(differentiate_expr(ex::mul(a, b), "k"), differentiate_expr(ex::mul(b, a), "k")));
    ASSERT_TRUE(markers_consistent(da, "k"));
  }
}
