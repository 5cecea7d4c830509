#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace fibdiff {

using BigInt = mpz_class;

// Exact rational backed by GMP; always stored in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(static_cast<long>(v)) {}
  Rational(long v) : v_(v) {}
  Rational(long long v) : v_(static_cast<long>(v)) {}
  explicit Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q);

  static Rational parse(std::string_view text);

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  bool fits_long() const;
  long to_long() const;
  double to_double() const { return v_.get_d(); }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(long e) const;
  bool is_square() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string str() const;

 private:
  mpq_class v_;
};

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
// Binomial coefficient with the falling-factorial extension to negative top.
Rational binomial(long top, long bottom);

}  // namespace fibdiff
