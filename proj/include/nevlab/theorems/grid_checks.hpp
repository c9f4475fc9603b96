#pragma once

#include <optional>
#include <vector>

#include "nevlab/meroeval/elliptic_rat.hpp"
#include "nevlab/nevanlinna/profile.hpp"
#include "nevlab/theorems/exact_checks.hpp"

namespace nevlab::thm {

using nev::NevProfile;

/// Series that are not part of a pair profile.
struct FiveValueExtras {
  std::optional<std::vector<double>> nbar_diff;  // N-bar(r, 1/(f-g))
  std::optional<mero::ExtValue> b;               // test value, not shared
  std::optional<std::vector<double>> nbar_f_b, nbar_g_b;
};

/// (N_a) ... (N_d) on the grid of a pair profile with four shared values.  Conditions whose
/// extra series are absent are reported inconclusive.
std::vector<CheckResult> check_five_value_conditions(const NevProfile& p, const FiveValueExtras& x = {});

/// (R_a) ... (R_f).  four_value_conclusion is the outcome of check_four_value_conclusion; a pair
/// satisfying it is outside the lemma's alternative and is rejected.
std::vector<CheckResult> check_key_lemma(const NevProfile& p, bool four_value_conclusion);

/// (5/209) T <= T(Phi) + S and T(Phi) <= 2T - 2 N-bar(inf) + S.  curve is required for an
/// elliptic Phi.  Without a value shared CM the check is reported inapplicable.
CheckResult check_phi_growth_bound(const NevProfile& p, const ExactFunc& phi, bool cm_value,
                                   const mero::CurveParam* curve = nullptr);

struct SharpOptions {
  double half_width = 30.0;  // sampled square [-h, h]^2
  int points = 121;          // per side
};

/// Evidence that f# + g# is bounded (sup on the square vs sup on the half-size square) and the
/// exact constancy of Mues' Psi.
CheckResult check_psi_constancy_under_bounded_sharp(const mero::MeroFunc& f, const mero::MeroFunc& g,
                                                    const ExactFunc& fe, const ExactFunc& ge,
                                                    const std::vector<ExactValue>& values,
                                                    const SharpOptions& opt = {});

}  // namespace nevlab::thm
