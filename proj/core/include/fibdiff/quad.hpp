#pragma once

#include <string>

#include "fibdiff/rational.hpp"

namespace fibdiff {

// The field Q(sqrt(radicand)). Instances are interned, so fields compare by address.
// The rational-only field stands in when p^2 - 4q is a square and only rational values occur.
class QuadField {
 public:
  static const QuadField& get(const Rational& radicand);
  static const QuadField& for_params(const Rational& p, const Rational& q);
  static const QuadField& rational_only();
  static bool is_degenerate(const Rational& radicand);

  const Rational& radicand() const { return radicand_; }
  bool has_radical() const { return !radicand_.is_zero(); }

  QuadField(const QuadField&) = delete;
  QuadField& operator=(const QuadField&) = delete;

 private:
  explicit QuadField(Rational radicand) : radicand_(std::move(radicand)) {}
  Rational radicand_;
};

class QuadExt {
 public:
  explicit QuadExt(const QuadField& field, Rational a = Rational(0), Rational b = Rational(0));

  static QuadExt radical(const QuadField& field);
  // Roots of x^2 - p x + q: tau = (p + sqrtD)/2, sigma = (p - sqrtD)/2.
  static QuadExt tau(const QuadField& field, const Rational& p);
  static QuadExt sigma(const QuadField& field, const Rational& p);

  const QuadField& field() const { return *field_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  Rational norm() const;
  QuadExt conj() const;
  QuadExt inverse() const;
  QuadExt pow(long e) const;
  double to_double() const;

  QuadExt operator-() const;
  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);
  QuadExt& operator*=(const Rational& r);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend QuadExt operator*(QuadExt x, const Rational& r) { return x *= r; }
  friend bool operator==(const QuadExt& x, const QuadExt& y);

  // Total order used for deterministic container keys (field, then a, then b).
  friend bool operator<(const QuadExt& x, const QuadExt& y);

  std::string str() const;

 private:
  void check_same(const QuadExt& o) const;
  const QuadField* field_;
  Rational a_;
  Rational b_;
};

QuadExt quad_mul(const QuadExt& x, const QuadExt& y);
QuadExt quad_inv(const QuadExt& x);
QuadExt quad_conj(const QuadExt& x);

}  // namespace fibdiff
