#include "fibdiff/rational.hpp"

#include <climits>

#include "fibdiff/errors.hpp"

namespace fibdiff {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw ArithmeticError("not a rational literal: '" + s + "'");
  }
  if (q.get_den() == 0) throw ArithmeticError("rational with zero denominator");
  q.canonicalize();
  return Rational(q);
}

bool Rational::fits_long() const { return is_integer() && v_.get_num().fits_slong_p(); }

long Rational::to_long() const {
  if (!fits_long()) throw ArithmeticError("rational " + str() + " is not a machine integer");
  return v_.get_num().get_si();
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero");
  mpq_class r = 1 / v_;
  return Rational(r);
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

bool Rational::is_square() const {
  if (sign() < 0) return false;
  return mpz_perfect_square_p(v_.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(v_.get_den_mpz_t()) != 0;
}

Rational Rational::operator-() const {
  mpq_class r = -v_;
  return Rational(r);
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const { return v_.get_str(); }

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational binomial(long top, long bottom) {
  if (bottom < 0) return Rational(0);
  if (top >= 0) {
    if (bottom > top) return Rational(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
    return Rational(r);
  }
  BigInt r;
  BigInt t(top);
  mpz_bin_ui(r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(bottom));
  return Rational(r);
}

}  // namespace fibdiff
