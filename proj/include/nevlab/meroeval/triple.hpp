#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <vector>

#include "nevlab/meroeval/elliptic_rat.hpp"

namespace nevlab::mero {

class TrackingError : public EvalError {
 public:
  using EvalError::EvalError;
};

/// Roots of w^3 + 3[(conj(alpha)+1)u^2 + 2u] w^2 - 3[2u^2 + (alpha+1)u] w - u^3 = 0
/// along u = u(z), labelled by continuation from a base point.
class TripleSystem {
 public:
  struct State {
    cplx z;
    Jet u;
    std::array<cplx, 3> w;
  };

  /// alpha must be a primitive sixth root of unity with alpha^3 = -1.
  TripleSystem(exact::Coeff alpha, CurveParam u_curve);

  const exact::Coeff& alpha_exact() const { return alpha_exact_; }
  cplx alpha() const { return alpha_; }
  const CurveParam& u_curve() const { return curve_; }
  cplx base() const { return base_.z; }
  /// Periods of u.
  std::array<cplx, 2> u_periods() const { return curve_.periods(); }
  /// Periods of the branches (a sublattice of the u-lattice).
  const std::array<cplx, 2>& periods() const { return periods_; }

  /// Cubic coefficients (1, p, q, r) at u.
  std::array<cplx, 4> coefficients(cplx u) const;
  /// Unordered roots of the cubic at u.
  std::array<cplx, 3> roots_at(cplx u) const;
  /// (w, w', w'') of the root w along u = u(z) given the u jet.
  Jet branch_jet(cplx w, const Jet& u) const;
  /// Rounding noise of a root w at u.
  double root_noise(cplx w, cplx u) const;

  /// Continue the three roots from s to the point `to`; throws TrackingError.
  void track(State& s, cplx to) const;
  /// State at z with labels fixed by the base point (z is first reduced modulo periods()).
  State state_at(cplx z, cplx* offset = nullptr) const;
  /// The three branch values at z; index k is branch k.
  std::array<cplx, 3> branches(cplx z) const;
  /// Pole sites of branch k in one branch period cell.
  const std::vector<PoleSite>& cell_poles(int k) const { return cell_poles_[static_cast<std::size_t>(k)]; }

 private:
  bool step_path(State& s, cplx to) const;
  State fresh_state(cplx z) const;

  exact::Coeff alpha_exact_;
  cplx alpha_;
  CurveParam curve_;
  State base_;
  std::array<cplx, 2> periods_{};
  std::array<std::vector<PoleSite>, 3> cell_poles_;
  double hmax_ = 0.0;
};

using TriplePtr = std::shared_ptr<const TripleSystem>;

/// Triple built on u = v with (v')^2 = 4 v (v+1)(v+alpha).
TriplePtr make_triple(const exact::Coeff& alpha);

/// alpha = (1 + i sqrt 3)/2 or its conjugate.
exact::Coeff triple_alpha(bool plus = true);

/// The three roots at z, ordered by branch index.
std::array<cplx, 3> triple_branches(const TripleSystem& sys, cplx z);

class TripleBranch : public MeroFunc {
 public:
  TripleBranch(TriplePtr sys, int index);

  int index() const { return k_; }
  const TripleSystem& system() const { return *sys_; }
  Jet eval(cplx z) const override;
  std::unique_ptr<Cursor> cursor(cplx z0) const override;
  std::vector<PoleSite> poles_in(const Box& box) const override;
  double noise(cplx z, const Jet& j) const override;
  std::optional<std::array<cplx, 2>> periods() const override { return sys_->periods(); }
  std::string describe() const override;

 private:
  TriplePtr sys_;
  int k_;
};

}  // namespace nevlab::mero
