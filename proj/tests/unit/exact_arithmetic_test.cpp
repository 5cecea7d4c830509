#include <gtest/gtest.h>

#include "fibdiff/errors.hpp"
#include "fibdiff/laurent.hpp"
#include "fibdiff/quad.hpp"
#include "fibdiff/rational.hpp"
#include "fibdiff/seedpoly.hpp"
#include "gen.hpp"

using namespace fibdiff;
using fibdiff::testing::Gen;

namespace {

const QuadField& q5() { return QuadField::get(Rational(5)); }
Rational r(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

}  // namespace

TEST(Rational, StoredReduced) {
  Rational x(BigInt(6), BigInt(-4));
  EXPECT_EQ(x.numerator(), -3);
  EXPECT_EQ(x.denominator(), 2);
  EXPECT_EQ(Rational(BigInt(0), BigInt(7)).denominator(), 1);
  EXPECT_EQ(Rational::parse("-10/4"), r(-5, 2));
}

TEST(Rational, Binomial) {
  EXPECT_EQ(binomial(5, 2), Rational(10));
  EXPECT_EQ(binomial(4, 0), Rational(1));
  EXPECT_EQ(binomial(3, 5), Rational(0));
  // falling factorial: (-2)(-3)/2
  EXPECT_EQ(binomial(-2, 2), Rational(3));
}

TEST(QuadExt, GoldenProductIsMinusOne) {
  QuadExt a = QuadExt::tau(q5(), r(1));
  QuadExt b = QuadExt::sigma(q5(), r(1));
  EXPECT_EQ(quad_mul(a, b), QuadExt(q5(), r(-1)));
}

TEST(QuadExt, MultiplicativeIdentity) {
  QuadExt x(q5(), r(3, 7), r(-2, 5));
  EXPECT_EQ(quad_mul(x, QuadExt(q5(), r(1))), x);
}

TEST(QuadExt, GoldenSquare) {
  // ((1 + sqrt5)/2)^2 = (6 + 2 sqrt5)/4
  QuadExt a = QuadExt::tau(q5(), r(1));
  EXPECT_EQ(quad_mul(a, a), QuadExt(q5(), r(3, 2), r(1, 2)));
}

TEST(QuadExt, Inverses) {
  QuadExt a = QuadExt::tau(q5(), r(1));
  EXPECT_EQ(quad_inv(a), -QuadExt::sigma(q5(), r(1)));
  EXPECT_EQ(quad_inv(QuadExt(q5(), r(1))), QuadExt(q5(), r(1)));
  EXPECT_EQ(quad_inv(QuadExt::radical(q5())), QuadExt(q5(), r(0), r(1, 5)));
  EXPECT_THROW(quad_inv(QuadExt(q5())), ArithmeticError);
}

TEST(QuadExt, Conjugation) {
  EXPECT_EQ(quad_conj(QuadExt::radical(q5())), -QuadExt::radical(q5()));
  EXPECT_EQ(quad_conj(QuadExt(q5(), r(3))), QuadExt(q5(), r(3)));
  EXPECT_EQ(quad_conj(QuadExt::tau(q5(), r(1))), QuadExt::sigma(q5(), r(1)));
}

TEST(QuadExt, RejectsDegenerateAndMixedFields) {
  EXPECT_THROW(QuadField::get(Rational(16)), ArithmeticError);
  EXPECT_THROW(QuadField::get(Rational(-3)), ArithmeticError);
  const QuadField& f8 = QuadField::get(Rational(8));
  EXPECT_THROW(QuadExt(q5(), r(1)) + QuadExt(f8, r(1)), ArithmeticError);
}

TEST(QuadExtProperty, FieldAxioms) {
  Gen g(11);
  const std::vector<long> radicands{2, 3, 5, 8, 13, 17};
  for (int i = 0; i < 10000; ++i) {
    const QuadField& f = QuadField::get(Rational(g.pick(radicands)));
    QuadExt x = g.quad(f), y = g.quad(f), z = g.quad(f);
    ASSERT_EQ((x * y) * z, x * (y * z));
    ASSERT_EQ(x * (y + z), x * y + x * z);
    ASSERT_EQ(x * y, y * x);
    if (!x.is_zero()) ASSERT_EQ(x * x.inverse(), QuadExt(f, r(1)));
  }
}

TEST(QuadExtProperty, ConjugationIsAutomorphism) {
  Gen g(12);
  const std::vector<long> radicands{2, 3, 5, 8, 13, 17};
  for (int i = 0; i < 10000; ++i) {
    const QuadField& f = QuadField::get(Rational(g.pick(radicands)));
    QuadExt x = g.quad(f), y = g.quad(f);
    ASSERT_EQ(quad_conj(x * y), quad_conj(x) * quad_conj(y));
    ASSERT_EQ(quad_conj(x + y), quad_conj(x) + quad_conj(y));
    ASSERT_EQ(quad_conj(quad_conj(x)), x);
    // norm is rational and multiplicative
    ASSERT_EQ(QuadExt(f, (x * y).norm()), QuadExt(f, x.norm() * y.norm()));
  }
}

TEST(QuadExtProperty, RootsSumAndProduct) {
  Gen g(13);
  for (int i = 0; i < 2000; ++i) {
    Rational p = g.rational(20, 6), q = g.nonzero_rational(20, 6);
    Rational d = p * p - Rational(4) * q;
    if (QuadField::is_degenerate(d)) continue;
    const QuadField& f = QuadField::get(d);
    QuadExt t = QuadExt::tau(f, p), s = QuadExt::sigma(f, p);
    ASSERT_EQ(t + s, QuadExt(f, p));
    ASSERT_EQ(t * s, QuadExt(f, q));
  }
}

TEST(SeedPoly, Substitution) {
  const QuadField& f = q5();
  SeedPoly g0 = SeedPoly::symbol(f, "G0"), g1 = SeedPoly::symbol(f, "G1");
  SeedPoly e = g0 * g0 - g1 * g1 + g0 * g1;
  EXPECT_EQ(e.substitute({{"G0", r(0)}, {"G1", r(1)}}), QuadExt(f, r(-1)));
  EXPECT_EQ(e.substitute({{"G0", r(2)}, {"G1", r(1)}}), QuadExt(f, r(5)));
  EXPECT_EQ(SeedPoly(f, r(7)).substitute({}), QuadExt(f, r(7)));
  EXPECT_THROW(e.substitute({{"G0", r(1)}}), Error);
}

TEST(SeedPolyProperty, RingLawsAndHomomorphism) {
  Gen g(14);
  const QuadField& f = q5();
  auto random_poly = [&] {
    SeedPoly p(f);
    for (int t = 0; t < 3; ++t) {
      SeedPoly m(g.quad(f));
      for (int e = g.integer(0, 2); e > 0; --e) m *= SeedPoly::symbol(f, g.coin() ? "G0" : "H1");
      p += m;
    }
    return p;
  };
  for (int i = 0; i < 500; ++i) {
    SeedPoly a = random_poly(), b = random_poly(), c = random_poly();
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_TRUE((a - a).is_zero());
    std::map<std::string, Rational> at{{"G0", g.rational()}, {"H1", g.rational()}};
    ASSERT_EQ((a * b).substitute(at), a.substitute(at) * b.substitute(at));
    ASSERT_EQ((a + b).substitute(at), a.substitute(at) + b.substitute(at));
  }
}

TEST(LaurentPolyProperty, RingLawsAndNormalization) {
  Gen g(15);
  const QuadField& f = q5();
  auto random_poly = [&] {
    LaurentPoly p(f, 2);
    for (int t = 0; t < 4; ++t) {
      p += LaurentPoly::monomial({static_cast<int>(g.integer(-3, 3)), static_cast<int>(g.integer(-3, 3))},
                                 SeedPoly(g.quad(f)));
    }
    return p;
  };
  for (int i = 0; i < 300; ++i) {
    LaurentPoly a = random_poly(), b = random_poly(), c = random_poly();
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a.normalized().normalized(), a.normalized());
    ASSERT_TRUE((a - a).is_zero());
    LaurentPoly ab = a * b;
    for (const auto& [e, coeff] : ab.terms()) ASSERT_FALSE(coeff.is_zero());
  }
  // x * x^-1 = 1
  LaurentPoly x = LaurentPoly::monomial({1, 0}, SeedPoly(f, r(1)));
  LaurentPoly xi = LaurentPoly::monomial({-1, 0}, SeedPoly(f, r(1)));
  EXPECT_EQ(x * xi, LaurentPoly::constant(2, SeedPoly(f, r(1))));
}
