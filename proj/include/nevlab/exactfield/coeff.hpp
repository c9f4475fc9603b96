#pragma once

#include <complex>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace nevlab::exact {

class FieldMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// a + b*sqrt(d) in Q(sqrt d).  Rational elements carry d == 1 and b == 0.
class Coeff {
 public:
  Coeff() = default;
  Coeff(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Coeff(mpq_class a);
  Coeff(mpq_class a, mpq_class b, long d);

  static Coeff fraction(long num, long den);
  static Coeff sqrt(long d);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& surd_part() const { return b_; }
  long radicand() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return a_ == 1 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  Coeff conj() const;
  /// Field norm a^2 - d b^2.
  mpq_class norm() const;
  Coeff inverse() const;

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  Coeff& operator/=(const Coeff& o);
  Coeff operator-() const;

  friend Coeff operator+(Coeff x, const Coeff& y) { return x += y; }
  friend Coeff operator-(Coeff x, const Coeff& y) { return x -= y; }
  friend Coeff operator*(Coeff x, const Coeff& y) { return x *= y; }
  friend Coeff operator/(Coeff x, const Coeff& y) { return x /= y; }
  friend bool operator==(const Coeff& x, const Coeff& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.is_rational() || x.d_ == y.d_);
  }

  std::complex<double> to_complex() const;
  /// "p/q" for rationals, "a+b√d" otherwise.
  std::string str() const;

 private:
  void normalize();
  long joint_radicand(const Coeff& o) const;

  mpq_class a_{0};
  mpq_class b_{0};
  long d_ = 1;
};

/// Throws std::invalid_argument unless d is a squarefree integer other than 0 and 1.
void require_radicand(long d);

std::string rational_str(const mpq_class& q);

}  // namespace nevlab::exact
