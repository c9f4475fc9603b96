#pragma once

#include <complex>
#include <vector>

#include "nevlab/exactfield/exact_func.hpp"

namespace nevlab::mero {

using cplx = std::complex<double>;

/// Polynomial with complex double coefficients (ascending degree).
struct CPoly {
  std::vector<cplx> c;

  CPoly() = default;
  explicit CPoly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {}
  explicit CPoly(const exact::Poly& p);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  cplx operator()(cplx z) const;
  /// value, first and second derivative
  void eval2(cplx z, cplx& v, cplx& d1, cplx& d2) const;
  /// sum |c_k| |z|^k, the rounding scale of a Horner evaluation
  double abs_scale(double r) const;
};

/// All complex roots (companion eigenvalues, Newton polished), with repetition.
std::vector<cplx> roots(const CPoly& p);

/// Numeric twin of an ExactFunc (A + B y)/D.
struct CFunc {
  CPoly a, b, d;
  bool has_y = false;

  CFunc() = default;
  explicit CFunc(const exact::ExactFunc& f);
  cplx operator()(cplx u, cplx y = 0.0) const;
};

}  // namespace nevlab::mero
