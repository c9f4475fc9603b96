#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "nevlab/meroeval/lattice.hpp"
#include "nevlab/meroeval/mero_func.hpp"

namespace nevlab::mero {

/// Parametrisation of y^2 = P(u), deg P = 3, by u = wp(s z + c) + m, y = s wp'(s z + c).
struct CurveParam {
  Lattice lattice;
  cplx scale;  // s with 4 s^2 = lead(P)
  cplx mean;   // m = -P_2 / (3 P_3)
  cplx phase;  // c

  static CurveParam from_model(const exact::Model& model, cplx phase = 0.0);
  /// Periods in the z-plane: 2 omega_i / s.
  std::array<cplx, 2> periods() const;
  /// (u, u', u'') at z; pole at lattice points.
  Jet u_jet(cplx z) const;
};

/// Solutions of wp(zeta) = t with zeta in the cell {2 a omega1 + 2 b omega2 : a, b in [0,1)}.
std::vector<cplx> inverse_wp(const Lattice& lat, cplx t);

/// R(u, y) with (u, y) = (u(z), u'(z)) on the curve of an EllipticModel.
class EllipticRat : public MeroFunc {
 public:
  EllipticRat(exact::ExactFunc expr, CurveParam curve, std::string name = "");

  const exact::ExactFunc& exact() const { return r_; }
  const CurveParam& curve() const { return curve_; }
  Jet eval(cplx z) const override;
  Jet eval_reciprocal(cplx z) const override;
  std::vector<PoleSite> poles_in(const Box& box) const override;
  double noise(cplx z, const Jet& j) const override;
  std::optional<std::array<cplx, 2>> periods() const override { return curve_.periods(); }
  bool is_constant() const override { return r_.is_constant(); }
  std::string describe() const override;
  std::shared_ptr<const MeroFunc> minus(const exact::Coeff& a) const override;

  /// Poles in the z-plane cell spanned by periods() at the origin.
  const std::vector<PoleSite>& cell_poles() const { return cell_poles_; }

 private:
  Jet eval_with(const std::array<CFunc, 3>& fs, cplx z, bool reciprocal) const;

  exact::ExactFunc r_;
  CurveParam curve_;
  std::string name_;
  std::array<CFunc, 3> f_;
  std::optional<std::array<CFunc, 3>> inv_;
  int ord_inf_ = 0;  // order of r_ at the lattice points
  std::vector<PoleSite> cell_poles_;
};

/// Lattice points translates of the sites that fall into the box.
std::vector<PoleSite> periodic_sites(const std::vector<PoleSite>& cell, const std::array<cplx, 2>& periods,
                                     const Box& box);

}  // namespace nevlab::mero
