#pragma once

#include <array>
#include <complex>
#include <vector>

namespace nevlab::mero {

using cplx = std::complex<double>;

struct WpValue {
  cplx p;
  cplx dp;
  bool pole = false;
};

/// Period lattice of y^2 = 4x^3 - g2 x - g3 with reduced half-period basis.
class Lattice {
 public:
  Lattice(cplx omega1, cplx omega2, cplx g2, cplx g3);

  cplx omega1() const { return w1_; }
  cplx omega2() const { return w2_; }
  cplx g2() const { return g2_; }
  cplx g3() const { return g3_; }
  /// e_1 = wp(omega1), e_2 = wp(omega2), e_3 = wp(omega1 + omega2)
  const std::array<cplx, 3>& roots() const { return e_; }

  /// z minus the nearest lattice point.
  cplx reduce(cplx z) const;
  /// Lattice coordinates (s, t) with z = s*2omega1 + t*2omega2.
  std::array<double, 2> coords(cplx z) const;
  cplx point(double m, double n) const { return 2.0 * (m * w1_ + n * w2_); }

  WpValue wp(cplx z) const;

 private:
  WpValue laurent(cplx z) const;

  cplx w1_, w2_, g2_, g3_;
  std::array<cplx, 3> e_{};
  std::vector<cplx> c_;  // Laurent coefficients of z^(2k-2), k = 2..
  double r0_ = 0.0;
};

/// Lattice for the roots e1 + e2 + e3 = 0 of 4t^3 - g2 t - g3.
Lattice lattice_from_cubic(const std::array<cplx, 3>& roots);

}  // namespace nevlab::mero
