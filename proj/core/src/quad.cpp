#include "fibdiff/quad.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "fibdiff/errors.hpp"

namespace fibdiff {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<Rational, std::unique_ptr<QuadField>>& registry() {
  static std::map<Rational, std::unique_ptr<QuadField>> r;
  return r;
}

}  // namespace

bool QuadField::is_degenerate(const Rational& radicand) {
  return radicand.sign() <= 0 || radicand.is_square();
}

const QuadField& QuadField::get(const Rational& radicand) {
  if (is_degenerate(radicand)) {
    throw ArithmeticError("degenerate radicand " + radicand.str() +
                          " (must be positive and not a rational square)");
  }
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = registry()[radicand];
  if (!slot) slot.reset(new QuadField(radicand));
  return *slot;
}

const QuadField& QuadField::for_params(const Rational& p, const Rational& q) {
  return get(p * p - Rational(4) * q);
}

const QuadField& QuadField::rational_only() {
  static const QuadField* f = new QuadField(Rational(0));
  return *f;
}

QuadExt::QuadExt(const QuadField& field, Rational a, Rational b)
    : field_(&field), a_(std::move(a)), b_(std::move(b)) {
  if (!field.has_radical() && !b_.is_zero()) {
    throw ArithmeticError("radical part in the rational-only field");
  }
}

QuadExt QuadExt::radical(const QuadField& field) {
  if (!field.has_radical()) throw ArithmeticError("rational-only field has no radical");
  return QuadExt(field, Rational(0), Rational(1));
}

QuadExt QuadExt::tau(const QuadField& field, const Rational& p) {
  return QuadExt(field, p / Rational(2), Rational(BigInt(1), BigInt(2)));
}

QuadExt QuadExt::sigma(const QuadField& field, const Rational& p) {
  return QuadExt(field, p / Rational(2), -Rational(BigInt(1), BigInt(2)));
}

void QuadExt::check_same(const QuadExt& o) const {
  if (field_ != o.field_) {
    throw ArithmeticError("mixing quadratic fields sqrt(" + field_->radicand().str() +
                          ") and sqrt(" + o.field_->radicand().str() + ")");
  }
}

Rational QuadExt::norm() const { return a_ * a_ - b_ * b_ * field_->radicand(); }

QuadExt QuadExt::conj() const { return QuadExt(*field_, a_, -b_); }

QuadExt QuadExt::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero");
  Rational n = norm();
  return QuadExt(*field_, a_ / n, -b_ / n);
}

QuadExt QuadExt::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  QuadExt result(*field_, Rational(1));
  QuadExt base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

double QuadExt::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(field_->radicand().to_double());
}

QuadExt QuadExt::operator-() const { return QuadExt(*field_, -a_, -b_); }

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  check_same(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  check_same(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  check_same(o);
  if (b_.is_zero() && o.b_.is_zero()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + b_ * o.b_ * field_->radicand();
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
  check_same(o);
  if (o.is_zero()) throw ArithmeticError("division by zero");
  return *this *= o.inverse();
}

QuadExt& QuadExt::operator*=(const Rational& r) {
  a_ *= r;
  b_ *= r;
  return *this;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
  x.check_same(y);
  return x.a_ == y.a_ && x.b_ == y.b_;
}

bool operator<(const QuadExt& x, const QuadExt& y) {
  if (x.field_ != y.field_) return x.field_->radicand() < y.field_->radicand();
  if (x.a_ != y.a_) return x.a_ < y.a_;
  return x.b_ < y.b_;
}

std::string QuadExt::str() const {
  if (b_.is_zero()) return a_.str();
  std::string rad = "sqrt(" + field_->radicand().str() + ")";
  std::string bpart;
  Rational bb = b_.abs();
  bpart = bb.is_one() ? rad : bb.str() + "*" + rad;
  if (a_.is_zero()) return b_.sign() < 0 ? "-" + bpart : bpart;
  return a_.str() + (b_.sign() < 0 ? " - " : " + ") + bpart;
}

QuadExt quad_mul(const QuadExt& x, const QuadExt& y) { return x * y; }
QuadExt quad_inv(const QuadExt& x) { return x.inverse(); }
QuadExt quad_conj(const QuadExt& x) { return x.conj(); }

}  // namespace fibdiff
