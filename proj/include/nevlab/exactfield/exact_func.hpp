#pragma once

#include <complex>
#include <string>

#include "nevlab/exactfield/poly.hpp"

namespace nevlab::exact {

/// Derivation model.  Exp: D(u) = u, so R(u) stands for R(e^z).
/// Elliptic(P): y^2 = P(u), D(u) = y, D(y) = P'(u)/2.
class Model {
 public:
  enum class Kind { Exp, Elliptic };

  static Model exp() { return Model(); }
  static Model elliptic(Poly p);

  Kind kind() const { return kind_; }
  bool is_elliptic() const { return kind_ == Kind::Elliptic; }
  const Poly& curve() const { return p_; }
  std::string str() const;

  friend bool operator==(const Model& a, const Model& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }

 private:
  Kind kind_ = Kind::Exp;
  Poly p_;
};

/// (A + B*y)/D with gcd(A, B, D) = 1 and D monic.
class ExactFunc {
 public:
  ExactFunc() = default;
  ExactFunc(Model m, Poly a, Poly b = Poly(), Poly d = Poly(1));

  static ExactFunc constant(const Model& m, const Coeff& c) { return ExactFunc(m, Poly(c)); }
  static ExactFunc u(const Model& m) { return ExactFunc(m, Poly::x()); }
  static ExactFunc y(const Model& m);

  const Model& model() const { return model_; }
  const Poly& num_a() const { return a_; }
  const Poly& num_b() const { return b_; }
  const Poly& den() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_constant() const;
  /// Value of a constant element; throws std::domain_error otherwise.
  Coeff constant_value() const;

  ExactFunc inverse() const;
  ExactFunc derive() const;
  /// Norm (A+By)(A-By) = A^2 - B^2 P of the numerator.
  Poly numerator_norm() const;

  ExactFunc& operator+=(const ExactFunc& o);
  ExactFunc& operator-=(const ExactFunc& o);
  ExactFunc& operator*=(const ExactFunc& o);
  ExactFunc& operator/=(const ExactFunc& o);
  ExactFunc operator-() const;

  friend ExactFunc operator+(ExactFunc x, const ExactFunc& y) { return x += y; }
  friend ExactFunc operator-(ExactFunc x, const ExactFunc& y) { return x -= y; }
  friend ExactFunc operator*(ExactFunc x, const ExactFunc& y) { return x *= y; }
  friend ExactFunc operator/(ExactFunc x, const ExactFunc& y) { return x /= y; }
  friend ExactFunc operator+(ExactFunc x, const Coeff& c) { return x += constant(x.model_, c); }
  friend ExactFunc operator-(ExactFunc x, const Coeff& c) { return x -= constant(x.model_, c); }
  friend ExactFunc operator*(ExactFunc x, const Coeff& c) { return x *= constant(x.model_, c); }
  friend bool operator==(const ExactFunc& x, const ExactFunc& y) {
    return x.model_ == y.model_ && x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

  ExactFunc pow(int e) const;

  /// Numerical value at (u, y); y is ignored in the Exp model.
  std::complex<double> eval(std::complex<double> u, std::complex<double> y = 0.0) const;

  /// Canonical text "((A);(B))/(D) @ model".
  std::string canonical() const;
  /// Readable form, e.g. "(u+1)/(u^2-2*u+1)".
  std::string str(const std::string& var = "u") const;

 private:
  void normalize();
  void require_same_model(const ExactFunc& o) const;

  Model model_;
  Poly a_;
  Poly b_;
  Poly d_{1};
};

}  // namespace nevlab::exact
