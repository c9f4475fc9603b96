#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "nevlab/exactfield/coeff.hpp"

namespace nevlab::exact {

/// Univariate polynomial in u over Q(sqrt d), coefficients in ascending degree.
class Poly {
 public:
  Poly() = default;
  Poly(Coeff c);  // NOLINT(google-explicit-constructor)
  Poly(long n) : Poly(Coeff(n)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<Coeff> coeffs);

  static Poly x();
  static Poly monomial(Coeff c, int deg);
  /// (u - r)
  static Poly linear_root(const Coeff& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Coeff& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Coeff coeff(int i) const;
  const Coeff& lead() const { return c_.back(); }
  const std::vector<Coeff>& coeffs() const { return c_; }
  /// Radicand shared by the coefficients (1 when all rational).
  long radicand() const;
  bool is_rational() const;

  Poly monic() const;
  Poly derivative() const;
  Poly conj() const;
  Coeff eval(const Coeff& x) const;
  std::complex<double> eval(std::complex<double> z) const;
  Poly pow(unsigned e) const;
  /// Coefficient-wise evaluation of p(q(u)).
  Poly compose(const Poly& q) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly operator-() const;
  Poly scaled(const Coeff& s) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws on a zero divisor.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  /// Exact quotient; throws std::domain_error if b does not divide a.
  static Poly exact_div(const Poly& a, const Poly& b);
  static Poly rem(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  /// Monic gcd; gcd(0,0) = 0.
  static Poly gcd(const Poly& a, const Poly& b);

  /// Yun decomposition p = lead * prod s_k^k with monic squarefree coprime s_k.
  std::vector<std::pair<Poly, int>> squarefree() const;
  /// Product of the distinct monic irreducible factors (monic radical).
  Poly radical() const;
  /// Rational roots of a polynomial with rational coefficients, with multiplicities.
  std::vector<std::pair<mpq_class, int>> rational_roots() const;

  /// Human form in the variable name, e.g. "u^2-2*u+1".
  std::string str(const std::string& var = "u") const;

 private:
  void trim();
  std::vector<Coeff> c_;
};

Poly operator*(const Poly& a, const Poly& b);

}  // namespace nevlab::exact
