#include "nevlab/exactfield/coeff.hpp"

#include <cmath>

namespace nevlab::exact {

void require_radicand(long d) {
  if (d == 0 || d == 1) throw std::invalid_argument("radicand must differ from 0 and 1");
  long m = d < 0 ? -d : d;
  for (long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) throw std::invalid_argument("radicand must be squarefree: " + std::to_string(d));
  }
}

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Coeff::Coeff(mpq_class a) : a_(std::move(a)) { a_.canonicalize(); }

Coeff::Coeff(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) != 0) require_radicand(d_);
  normalize();
}

Coeff Coeff::fraction(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return Coeff(mpq_class(num, den));
}

Coeff Coeff::sqrt(long d) { return Coeff(mpq_class(0), mpq_class(1), d); }

void Coeff::normalize() {
  if (sgn(b_) == 0) d_ = 1;
}

long Coeff::joint_radicand(const Coeff& o) const {
  if (is_rational()) return o.d_;
  if (o.is_rational() || o.d_ == d_) return d_;
  throw FieldMismatch("coefficients from Q(√" + std::to_string(d_) + ") and Q(√" +
                      std::to_string(o.d_) + ")");
}

Coeff Coeff::conj() const {
  Coeff c = *this;
  c.b_ = -c.b_;
  return c;
}

mpq_class Coeff::norm() const { return mpq_class(a_ * a_ - b_ * b_ * d_); }

Coeff Coeff::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero coefficient");
  mpq_class n = norm();
  Coeff c(mpq_class(a_ / n), mpq_class(-b_ / n), d_);
  return c;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  d_ = joint_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  d_ = joint_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Coeff& Coeff::operator*=(const Coeff& o) {
  long d = joint_radicand(o);
  mpq_class a = a_ * o.a_ + b_ * o.b_ * d;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

Coeff& Coeff::operator/=(const Coeff& o) { return *this *= o.inverse(); }

Coeff Coeff::operator-() const {
  Coeff c = *this;
  c.a_ = -c.a_;
  c.b_ = -c.b_;
  return c;
}

std::complex<double> Coeff::to_complex() const {
  double a = a_.get_d();
  if (is_rational()) return {a, 0.0};
  double b = b_.get_d();
  if (d_ > 0) return {a + b * std::sqrt(static_cast<double>(d_)), 0.0};
  return {a, b * std::sqrt(static_cast<double>(-d_))};
}

std::string Coeff::str() const {
  if (is_rational()) return rational_str(a_);
  std::string s = rational_str(a_);
  if (sgn(b_) > 0) s += "+";
  s += rational_str(b_) + "√" + std::to_string(d_);
  return s;
}

}  // namespace nevlab::exact
