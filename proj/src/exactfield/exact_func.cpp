#include "nevlab/exactfield/exact_func.hpp"

#include <stdexcept>

namespace nevlab::exact {

Model Model::elliptic(Poly p) {
  if (p.degree() < 1) throw std::invalid_argument("elliptic model needs a nonconstant curve polynomial");
  if (!(p.radical() == p.monic())) throw std::invalid_argument("curve polynomial must be squarefree");
  Model m;
  m.kind_ = Kind::Elliptic;
  m.p_ = std::move(p);
  return m;
}

std::string Model::str() const {
  if (kind_ == Kind::Exp) return "exp";
  return "elliptic(" + p_.str() + ")";
}

ExactFunc::ExactFunc(Model m, Poly a, Poly b, Poly d)
    : model_(std::move(m)), a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (d_.is_zero()) throw std::domain_error("zero denominator");
  if (!model_.is_elliptic() && !b_.is_zero()) throw std::invalid_argument("y-part in exp model");
  normalize();
}

ExactFunc ExactFunc::y(const Model& m) {
  if (!m.is_elliptic()) throw std::invalid_argument("y is only defined in the elliptic model");
  return ExactFunc(m, Poly(), Poly(1));
}

void ExactFunc::normalize() {
  if (a_.is_zero() && b_.is_zero()) {
    d_ = Poly(1);
    return;
  }
  Poly g = Poly::gcd(Poly::gcd(a_, b_), d_);
  if (g.degree() > 0) {
    a_ = Poly::exact_div(a_, g);
    b_ = Poly::exact_div(b_, g);
    d_ = Poly::exact_div(d_, g);
  }
  Coeff lc = d_.lead();
  if (!lc.is_one()) {
    Coeff inv = lc.inverse();
    a_ = a_.scaled(inv);
    b_ = b_.scaled(inv);
    d_ = d_.scaled(inv);
  }
}

void ExactFunc::require_same_model(const ExactFunc& o) const {
  if (!(model_ == o.model_)) throw std::invalid_argument("operands live in different models");
}

bool ExactFunc::is_constant() const { return b_.is_zero() && a_.degree() <= 0 && d_.degree() == 0; }

Coeff ExactFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("not a constant: " + str());
  return a_.coeff(0);
}

Poly ExactFunc::numerator_norm() const {
  if (!model_.is_elliptic()) return a_;
  return a_ * a_ - b_ * b_ * model_.curve();
}

ExactFunc ExactFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of the zero function");
  if (!model_.is_elliptic()) return ExactFunc(model_, d_, Poly(), a_);
  Poly n = numerator_norm();
  return ExactFunc(model_, d_ * a_, -(d_ * b_), n);
}

ExactFunc& ExactFunc::operator+=(const ExactFunc& o) {
  require_same_model(o);
  if (d_ == o.d_) {
    a_ += o.a_;
    b_ += o.b_;
  } else {
    a_ = a_ * o.d_ + o.a_ * d_;
    b_ = b_ * o.d_ + o.b_ * d_;
    d_ = d_ * o.d_;
  }
  normalize();
  return *this;
}

ExactFunc& ExactFunc::operator-=(const ExactFunc& o) { return *this += -o; }

ExactFunc& ExactFunc::operator*=(const ExactFunc& o) {
  require_same_model(o);
  Poly a = a_ * o.a_;
  if (model_.is_elliptic()) a += b_ * o.b_ * model_.curve();
  Poly b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d_ * o.d_;
  normalize();
  return *this;
}

ExactFunc& ExactFunc::operator/=(const ExactFunc& o) { return *this *= o.inverse(); }

ExactFunc ExactFunc::operator-() const {
  ExactFunc r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

ExactFunc ExactFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  ExactFunc result = constant(model_, Coeff(1));
  for (int i = 0; i < e; ++i) result *= *this;
  return result;
}

ExactFunc ExactFunc::derive() const {
  if (!model_.is_elliptic()) {
    // D p(u) = u p'(u)
    Poly u = Poly::x();
    Poly num = u * (a_.derivative() * d_ - a_ * d_.derivative());
    return ExactFunc(model_, num, Poly(), d_ * d_);
  }
  const Poly& p = model_.curve();
  Coeff half = Coeff::fraction(1, 2);
  // D(A + B y) = (B' P + B P'/2) + A' y ; D(den) = den' y
  ExactFunc dn(model_, b_.derivative() * p + (b_ * p.derivative()).scaled(half), a_.derivative());
  ExactFunc n(model_, a_, b_);
  ExactFunc dd(model_, Poly(), d_.derivative());
  ExactFunc den(model_, d_);
  return (dn * den - n * dd) / (den * den);
}

std::complex<double> ExactFunc::eval(std::complex<double> u, std::complex<double> y) const {
  std::complex<double> num = a_.eval(u);
  if (!b_.is_zero()) num += b_.eval(u) * y;
  return num / d_.eval(u);
}

std::string ExactFunc::canonical() const {
  return "((" + a_.str() + ");(" + b_.str() + "))/(" + d_.str() + ") @ " + model_.str();
}

std::string ExactFunc::str(const std::string& var) const {
  std::string num;
  if (b_.is_zero()) {
    num = a_.str(var);
  } else if (a_.is_zero()) {
    num = "(" + b_.str(var) + ")*y";
  } else {
    num = a_.str(var) + "+(" + b_.str(var) + ")*y";
  }
  if (d_.degree() == 0) return num;
  bool wrap = num.find_first_of("+-/*^") != std::string::npos;
  return (wrap ? "(" + num + ")" : num) + "/(" + d_.str(var) + ")";
}

}  // namespace nevlab::exact
