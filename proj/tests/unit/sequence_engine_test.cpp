#include <gtest/gtest.h>

#include "fibdiff/errors.hpp"
#include "fibdiff/identity.hpp"
#include "fibdiff/sequence.hpp"
#include "gen.hpp"

using namespace fibdiff;
using fibdiff::testing::Gen;
using fibdiff::testing::recurrence_term;

namespace {

Rational r(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

const QuadField& golden_field() { return QuadField::for_params(r(1), r(-1)); }

SequenceSpec spec(FamilyRole role, const std::string& name, long p = 1, long q = -1) {
  return SequenceSpec::make(name, role, r(p), r(q), QuadField::for_params(r(p), r(q)));
}

QuadExt as_const(const SeedPoly& s) {
  EXPECT_TRUE(s.is_constant());
  return s.constant();
}

}  // namespace

TEST(TermAt, Examples) {
  EXPECT_EQ(as_const(term_at(spec(FamilyRole::LucasV, "V", 3, -1), 1)), QuadExt(QuadField::get(r(13)), r(3)));
  EXPECT_TRUE(term_at(spec(FamilyRole::LucasU, "U"), 0).is_zero());
  EXPECT_EQ(as_const(term_at(spec(FamilyRole::LucasU, "U"), -5)).a(), r(5));
}

TEST(TermAt, NegativeIndexReflection) {
  // U_{-j} = (-1)^{j-1} U_j for q = -1
  SequenceSpec u = spec(FamilyRole::LucasU, "U", 2, -1);
  TermTable t(u);
  for (long j = 0; j <= 12; ++j) {
    Rational sign = j % 2 == 1 ? r(1) : r(-1);
    EXPECT_EQ(as_const(t.at(-j)).a(), sign * as_const(t.at(j)).a()) << "j=" << j;
  }
}

TEST(TermAt, MatchesIndependentRecurrence) {
  Gen g(21);
  for (int i = 0; i < 100; ++i) {
    auto [p, q] = g.params();
    SequenceSpec u = spec(FamilyRole::LucasU, "U", p, q);
    SequenceSpec v = spec(FamilyRole::LucasV, "V", p, q);
    TermTable tu(u), tv(v);
    for (long j = -8; j <= 8; ++j) {
      ASSERT_EQ(as_const(tu.at(j)).a(), recurrence_term(r(p), r(q), r(0), r(1), j));
      ASSERT_EQ(as_const(tv.at(j)).a(), recurrence_term(r(p), r(q), r(2), r(p), j));
    }
  }
}

TEST(TermAt, MemoizationTransparent) {
  TermTable t(spec(FamilyRole::Horadam, "W", 2, -2));
  SeedPoly first = t.at(-6);
  t.at(9);
  EXPECT_EQ(t.at(-6), first);
  EXPECT_EQ(t.at(-6), term_at(t.spec(), -6));
}

TEST(TermAt, FibonacciRequiresGoldenParams) {
  EXPECT_THROW(spec(FamilyRole::Fibonacci, "F", 2, -1), PreconditionError);
  EXPECT_THROW(SequenceSpec::make("U", FamilyRole::LucasU, r(0), r(-1), QuadField::get(r(5))), PreconditionError);
}

TEST(BinetCoefficients, Examples) {
  const QuadField& f = golden_field();
  BinetPair fib = binet_coefficients(spec(FamilyRole::Fibonacci, "F"));
  EXPECT_EQ(as_const(fib.A), QuadExt(f, r(0), r(1, 5)));
  EXPECT_EQ(as_const(fib.B), QuadExt(f, r(0), r(-1, 5)));
  BinetPair luc = binet_coefficients(spec(FamilyRole::Lucas, "L"));
  EXPECT_EQ(as_const(luc.A), QuadExt(f, r(1)));
  EXPECT_EQ(as_const(luc.B), QuadExt(f, r(1)));
  // A_G = (G1 - G0 beta)/sqrt5
  BinetPair gib = binet_coefficients(spec(FamilyRole::Gibonacci, "G"));
  SeedPoly g0 = SeedPoly::symbol(f, "G0"), g1 = SeedPoly::symbol(f, "G1");
  QuadExt beta = QuadExt::sigma(f, r(1));
  EXPECT_EQ(gib.A, (g1 - g0 * beta) * QuadExt::radical(f).inverse());
}

TEST(BinetCoefficients, SeedEquations) {
  Gen g(22);
  for (int i = 0; i < 50; ++i) {
    auto [p, q] = g.params();
    SequenceSpec w = spec(FamilyRole::Horadam, "W", p, q);
    BinetPair ab = binet_coefficients(w);
    const QuadField& f = w.field();
    ASSERT_EQ(ab.A + ab.B, w.seed0);
    ASSERT_EQ(ab.A * QuadExt::tau(f, r(p)) + ab.B * QuadExt::sigma(f, r(p)), w.seed1);
  }
}

TEST(LemmaCombination, Examples) {
  const QuadField& f = golden_field();
  EXPECT_EQ(as_const(lemma_combination(spec(FamilyRole::Fibonacci, "F"), 0)), QuadExt(f, r(0), r(2, 5)));
  // G_2 + G_0 = G1 + 2 G0
  SeedPoly g0 = SeedPoly::symbol(f, "G0"), g1 = SeedPoly::symbol(f, "G1");
  EXPECT_EQ(lemma_combination(spec(FamilyRole::Gibonacci, "G"), 1),
            (g1 + g0 * r(2)) * QuadExt::radical(f).inverse());
}

TEST(LemmaCombination, ForcedZero) {
  // L_1 + L_{-1} = 0
  EXPECT_TRUE(lemma_combination(spec(FamilyRole::Lucas, "L"), 0).is_zero());
}

TEST(LemmaProperty, RandomParamsAndSeeds) {
  Gen g(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto [p, q] = g.params();
    SequenceSpec w = spec(FamilyRole::Horadam, "W", p, q);
    const QuadField& f = w.field();
    Rational s0 = g.rational(9, 3), s1 = g.rational(9, 3);
    std::map<std::string, Rational> seeds{{"W0", s0}, {"W1", s1}};
    BinetPair ab = binet_coefficients(w);
    QuadExt tau = QuadExt::tau(f, r(p)), sigma = QuadExt::sigma(f, r(p));
    QuadExt a = ab.A.substitute(seeds), b = ab.B.substitute(seeds);
    QuadExt root = QuadExt::radical(f);
    for (long j = -8; j <= 8; ++j) {
      Rational next = recurrence_term(r(p), r(q), s0, s1, j + 1);
      Rational prev = recurrence_term(r(p), r(q), s0, s1, j - 1);
      QuadExt oracle = QuadExt(f, next - r(q) * prev) * root.inverse();
      ASSERT_EQ(a * tau.pow(j) - b * sigma.pow(j), oracle) << "p=" << p << " q=" << q << " j=" << j;
      ASSERT_EQ(lemma_combination(w, j).substitute(seeds), oracle);
    }
  }
}

TEST(BinetProperty, Reconstruction) {
  Gen g(24);
  for (int trial = 0; trial < 100; ++trial) {
    auto [p, q] = g.params();
    SequenceSpec w = spec(FamilyRole::Horadam, "W", p, q);
    const QuadField& f = w.field();
    BinetPair ab = binet_coefficients(w);
    QuadExt tau = QuadExt::tau(f, r(p)), sigma = QuadExt::sigma(f, r(p));
    TermTable t(w);
    Rational s0 = g.rational(9, 3), s1 = g.rational(9, 3);
    std::map<std::string, Rational> seeds{{"W0", s0}, {"W1", s1}};
    for (long j = -8; j <= 8; ++j) {
      // symbolic seeds
      ASSERT_EQ(ab.A * tau.pow(j) + ab.B * sigma.pow(j), t.at(j));
      ASSERT_EQ((ab.A * tau.pow(j) + ab.B * sigma.pow(j)).substitute(seeds),
                QuadExt(f, recurrence_term(r(p), r(q), s0, s1, j)));
    }
  }
}

TEST(Specializations, FibonacciNeighboursGiveLucas) {
  TermTable fib(spec(FamilyRole::Fibonacci, "F")), luc(spec(FamilyRole::Lucas, "L"));
  for (long j = -10; j <= 10; ++j) EXPECT_EQ(fib.at(j + 1) + fib.at(j - 1), luc.at(j));
  Gen g(25);
  for (int i = 0; i < 20; ++i) {
    auto [p, q] = g.params();
    TermTable u(spec(FamilyRole::LucasU, "U", p, q)), v(spec(FamilyRole::LucasV, "V", p, q));
    for (long j = -6; j <= 6; ++j) {
      bool holds = u.at(j + 1) - u.at(j - 1) * r(q) == v.at(j);
      ASSERT_TRUE(holds);
      if (q != -1 && j == 2) {
        ASSERT_FALSE(u.at(j + 1) + u.at(j - 1) == v.at(j));
      }
    }
  }
}
