#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nevlab/exactfield/exact_func.hpp"

namespace nevlab::exact {

/// Mues' function f'g'(f-g)^2 / prod (f-a)(g-a).  With infinity shared exactly
/// three finite values are expected, otherwise four.
ExactFunc mues_psi(const ExactFunc& f, const ExactFunc& g, const std::vector<Coeff>& finite_values,
                   bool infinity_shared);

struct PhiTriple {
  ExactFunc phi_f;
  ExactFunc phi_g;
  ExactFunc phi;
};

/// Phi_f = (f-g) f'/prod(f-a), Phi_g = (f-g) g'/prod(g-a), Phi = Phi_f/Phi_g for
/// three finite values (infinity being the fourth shared value).
PhiTriple phi_pair(const ExactFunc& f, const ExactFunc& g, const std::vector<Coeff>& values);

enum class AuxPreset { Phi40, Phi31, Phi22, Chi, Eta, Theta, Varphi };

std::optional<AuxPreset> aux_preset_from_name(const std::string& name);
std::string aux_preset_name(AuxPreset p);

struct AuxVerdict {
  enum class Kind { Zero, Constant, NonConstant };
  Kind kind = Kind::NonConstant;
  ExactFunc value;
  /// phi22 only: whether phi^2 = (a1+a2)^2 Psi holds exactly.
  std::optional<bool> psi_identity;
  std::string str() const;
};

/// Evaluate a preset auxiliary function.
///  phi40: no values;  phi31: three values;  phi22, chi: (a1, a2) with 0 and infinity shared;
///  eta, theta: (a1, a2) and index nu in {1, 2};  varphi: no values, index is kappa (needs Q(i)).
AuxVerdict aux_identity(AuxPreset preset, const ExactFunc& f, const ExactFunc& g,
                        const std::vector<Coeff>& values, int index = 1);

/// Throws std::invalid_argument if two values coincide.
void require_distinct(const std::vector<Coeff>& values);

}  // namespace nevlab::exact
