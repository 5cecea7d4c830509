#include <gtest/gtest.h>

#include "fibdiff/canonical.hpp"
#include "fibdiff/corpus.hpp"
#include "fibdiff/errors.hpp"
#include "fibdiff/numeric.hpp"
#include "fibdiff/parser.hpp"
#include "fibdiff/printer.hpp"
#include "fibdiff/verify.hpp"
#include "gen.hpp"
#include "perturb.hpp"

using namespace fibdiff;
using fibdiff::testing::Gen;
using fibdiff::testing::golden_pool;
using fibdiff::testing::perturb;
using fibdiff::testing::recurrence_term;

namespace {

Identity I(const std::string& text, const Context& ctx = Context::default_table()) { return parse_identity(text, ctx); }

const char* kHoggatt =
    "sum(j,0,4n+1, (-1)^(j-1)*binom(4n+1,j)*F[j+k]^4) = 25^n*(F[k+2n+1]^4 - F[k+2n]^4)";

VerifyOptions on(const std::string& grid) {
  VerifyOptions o;
  o.grid = parse_grid(grid);
  o.threads = 1;
  return o;
}

}  // namespace

TEST(Canonicalize, Examples) {
  const Context ctx = Context::default_table();
  EXPECT_TRUE(canonicalize(parse_expr("F[k]*L[k] - F[2k]"), ctx).is_zero());
  EXPECT_TRUE(canonicalize(parse_expr("5*F[k]^2 - L[k]^2 - (-1)^(k-1)*4"), ctx).is_zero());
  EXPECT_FALSE(canonicalize(parse_expr("F[k]^2 - F[k+1]*F[k-1]"), ctx).is_zero());
  CanonicalForm parity = canonicalize(parse_expr("(-1)^k*F[k]"), ctx);
  EXPECT_EQ(parity.cases.size(), 2u);
}

TEST(Prove, Examples) {
  EXPECT_TRUE(prove_identity(I("F[2k] = L[k]*F[k]")).proved);
  EXPECT_TRUE(prove_identity(I("5*F[k]^2 - L[k]^2 = (-1)^(k-1)*4")).proved);
  EXPECT_TRUE(prove_identity(I("F[k+1]*G[s+1] + F[k]*G[s] = G[k+s+1]")).proved);
  Context hor = Context::default_table(Rational(2), Rational(-3));
  EXPECT_TRUE(prove_identity(I("U[2k] = U[k]*V[k]", hor)).proved);
  EXPECT_TRUE(prove_identity(I("V[k]^2 - 16*U[k]^2 = 4*(-3)^k", hor)).proved);
}

TEST(Prove, RefutesPerturbation) {
  ProofVerdict v = prove_identity(I("F[2k] = L[k]*F[k] + 1"));
  EXPECT_FALSE(v.proved);
  EXPECT_FALSE(v.residue.empty());
}

TEST(Prove, ParityConstraint) {
  Identity even_only = parse_identity("F[k]^2 + 1 = F[k+1]*F[k-1]", Context::default_table(), {Constraint::parse("k even")});
  EXPECT_TRUE(prove_identity(even_only).proved);
  EXPECT_FALSE(prove_identity(I("F[k]^2 + 1 = F[k+1]*F[k-1]")).proved);
}

TEST(Prove, UnsupportedShapes) {
  EXPECT_THROW(prove_identity(I("sum(j,0,n, F[j]) = F[n+2] - 1")), UnsupportedForProof);
  EXPECT_THROW(prove_identity(I("arctan(1/F[2k+1]) = arctan(1/F[2k]) - arctan(1/F[2k+2])")), UnsupportedForProof);
  EXPECT_THROW(prove_identity(I("F[2^k] = F[2^k]")), UnsupportedForProof);
  EXPECT_FALSE(provable_shape(I("sum(j,0,n, F[j]) = F[n+2] - 1")));
}

TEST(Prove, ConstantBoundSumsExpand) {
  EXPECT_TRUE(prove_identity(I("sum(j,0,4, F[j]) = F[6] - 1")).proved);
  EXPECT_TRUE(prove_identity(I("sum(j,0,3, binom(3,j)*F[j+k]) = F[k+6]")).proved);
}

TEST(Verify, HoggattSum) {
  VerifyReport r = verify_instances(I(kHoggatt), on("n=0..2,k=-3..3"));
  EXPECT_TRUE(r.ok()) << r.str();
  EXPECT_EQ(r.pass, 21);
  EXPECT_EQ(r.method, "exact");
}

TEST(Verify, CorruptedHoggattFailsAtFirstPositiveN) {
  std::string text = kHoggatt;
  text.replace(text.find("25^n"), 4, "24^n");
  VerifyReport r = verify_instances(I(text), on("n=0..2,k=-3..3"));
  EXPECT_FALSE(r.ok());
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(r.counterexample->point.at("n"), 1);
  // every n = 0 instance still holds
  EXPECT_GE(r.pass, 7);
}

TEST(Verify, DefaultGridAndConstraints) {
  Identity h = I(kHoggatt);
  Grid g = default_grid(h);
  std::map<std::string, std::pair<long, long>> bounds;
  for (const auto& r : g) bounds[r.var] = {r.lo, r.hi};
  EXPECT_EQ(bounds.at("n"), std::make_pair(0L, 4L));
  EXPECT_EQ(bounds.at("k"), std::make_pair(-5L, 5L));
  Identity even = parse_identity("F[m] = F[m]", Context::default_table(), {Constraint::parse("m even")});
  for (const auto& pt : admissible_points(even, parse_grid("m=-3..3"))) EXPECT_EQ(pt.at("m") % 2, 0);
}

TEST(Verify, EmptySumAndReversedBounds) {
  EXPECT_TRUE(verify_instances(I("sum(j,0,n-1, F[j]) = F[n+1] - 1"), on("n=0..6")).ok());
}

// Exact instance values against an independent recurrence.
TEST(VerifyProperty, AgreesWithRecurrenceOracle) {
  Gen g(61);
  for (int trial = 0; trial < 40; ++trial) {
    long a = g.integer(0, 3), b = g.integer(-3, 3);
    std::string text = "sum(j,0,n, " + std::to_string(a) + "*F[j] + L[j+" + std::to_string(b) + "]) = 0";
    Identity id = I(text);
    VerifyReport r = verify_instances(id, on("n=0..5"));
    bool all_zero = true;
    for (long n = 0; n <= 5; ++n) {
      Rational s(0);
      for (long j = 0; j <= n; ++j) {
        s += Rational(a) * recurrence_term(Rational(1), Rational(-1), Rational(0), Rational(1), j) +
             recurrence_term(Rational(1), Rational(-1), Rational(2), Rational(1), j + b);
      }
      if (!s.is_zero()) all_zero = false;
    }
    EXPECT_EQ(r.ok(), all_zero) << text;
  }
}

TEST(Agreement, ProverAndVerifierOnCorpus) {
  int checked = 0;
  for (const auto& e : load_corpus(default_corpus_dir())) {
    if (e.mode != "prove" || !provable_shape(e.identity)) continue;
    Identity id = e.params.empty() ? e.identity : with_params(e.identity, e.params.front());
    ProofVerdict v = prove_identity(id);
    EXPECT_TRUE(v.proved) << e.id << ": " << v.str();
    VerifyOptions o;
    o.threads = 1;
    o.grid = e.grid;
    o.seeds = e.seeds;
    VerifyReport r = verify_instances(id, o);
    EXPECT_TRUE(r.ok()) << e.id << ": " << r.str();
    ++checked;
  }
  EXPECT_GE(checked, 25);
}

TEST(Soundness, PerturbedIdentitiesRefutedAndFalsified) {
  auto pool = golden_pool();
  ASSERT_FALSE(pool.empty());
  Gen g(71);
  int done = 0;
  for (int i = 0; done < 100 && i < 1000; ++i) {
    Identity bad = perturb(pool[static_cast<std::size_t>(i) % pool.size()], g);
    ProofVerdict v = prove_identity(bad);
    EXPECT_FALSE(v.proved) << print_identity(bad);
    VerifyOptions o;
    o.threads = 1;
    o.seeds = fibdiff::testing::fixed_seeds();
    VerifyReport r = verify_instances(bad, o);
    EXPECT_FALSE(r.ok()) << print_identity(bad);
    EXPECT_TRUE(r.counterexample.has_value()) << print_identity(bad);
    ++done;
  }
  EXPECT_EQ(done, 100);
}

TEST(Numeric, DerivativeFacts) {
  Context golden = Context::default_table();
  for (const char* fam : {"F", "L"}) {
    VerifyReport r = check_derivative_facts(golden, fam, -10, 10, 30, 1e-12);
    EXPECT_TRUE(r.ok()) << r.str();
    EXPECT_EQ(r.fail, 0);
  }
  Context hor = Context::default_table(Rational(2), Rational(-3));
  VerifyReport r = check_derivative_facts(hor, "U", -10, 10, 30, 1e-12);
  EXPECT_TRUE(r.ok()) << r.str();
}

TEST(Numeric, ArctanIdentities) {
  NumericOptions o;
  o.grid = parse_grid("k=0..8");
  EXPECT_TRUE(numeric_verify(I("arctan(1/F[2k+1]) = arctan(1/F[2k]) - arctan(1/F[2k+2])"), o).ok());
  NumericOptions m;
  m.grid = parse_grid("m=-2..4,k=-2..3");
  Identity ratio = parse_identity("arctan(F[2m]/F[2k+2m-1]) = arctan(L[m]/L[2k+m-1]) - arctan(L[m]/L[2k+3m-1])",
                                  Context::default_table(), {Constraint::parse("m even")});
  VerifyReport rr = numeric_verify(ratio, m);
  EXPECT_GT(rr.pass, 0);
  EXPECT_TRUE(numeric_verify(I("arctan(0) = 0"), {}).ok());
  EXPECT_FALSE(numeric_verify(I("arctan(1/F[2k+1]) = arctan(1/F[2k]) + arctan(1/F[2k+2])"), o).ok());
}

// Principal values cross branches at some negative indices; those points are reported, not wrapped.
TEST(Numeric, ArctanBranchCrossingsReported) {
  NumericOptions o;
  o.grid = parse_grid("m=-2..4,k=-2..3");
  Identity ratio = parse_identity("arctan(F[2m]/F[2k+2m-1]) = arctan(L[m]/L[2k+m-1]) - arctan(L[m]/L[2k+3m-1])",
                                  Context::default_table(), {Constraint::parse("m even")});
  VerifyReport r = numeric_verify(ratio, o);
  EXPECT_EQ(r.fail, 5);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.front().find("branch crossing"), std::string::npos);
}

TEST(Numeric, EvidenceIsNotProof) {
  NumericOptions o;
  o.grid = parse_grid("k=-3..3");
  VerifyReport r = numeric_verify(I("F[2k] = L[k]*F[k]"), o);
  EXPECT_EQ(r.method, "numeric");
  EXPECT_TRUE(r.ok());
}
