#pragma once

#include <gmpxx.h>
#include <optional>
#include <vector>

#include "nevlab/exactfield/divisor.hpp"
#include "nevlab/meroeval/mero_func.hpp"
#include "nevlab/theorems/check_result.hpp"

namespace nevlab::thm {

using exact::Coeff;
using exact::ExactFunc;
using exact::ExactValue;

/// (a, b, c, d) = (a-c)(b-d) / ((a-d)(b-c)), factors containing infinity dropped.
/// nullopt when two of the values coincide.
std::optional<Coeff> cross_ratio(const ExactValue& a, const ExactValue& b, const ExactValue& c, const ExactValue& d);

/// Cross-ratio of four values in the given order equals -1.
bool is_harmonic(const std::vector<ExactValue>& v);

/// The six ways of choosing the swapped pair {a1, a2} and the fixed pair {a3, a4}.
std::vector<std::array<int, 4>> pairings();

/// g = M(f) for the Moebius involution fixing a3, a4 that swaps a1, a2, for some pairing
/// whose cross-ratio is -1.  Exact.  Throws PreconditionError when f == g.
CheckResult check_four_value_conclusion(const ExactFunc& f, const ExactFunc& g, const std::vector<ExactValue>& values);

/// Same test for functions without an exact form: the cross-ratio is exact when every finite value
/// carries its exact coefficient, the relation g = M(f) is tested at sample points.
CheckResult check_four_value_conclusion(const mero::MeroFunc& f, const mero::MeroFunc& g,
                                        const std::vector<mero::ExtValue>& values,
                                        const std::vector<mero::cplx>& samples = {});

/// (2l+1)(l+2)/(l-4), l > 4.
mpq_class defekt_factor(int ell);

struct DefektMin {
  int ell = 0;
  mpq_class value;
};

/// Minimum of defekt_factor over 5 <= l <= lmax (first minimiser on ties).
DefektMin minimize_defekt(int lmax = 1000);

/// Minimiser location, the l = 5 value and strict decrease then increase on 5..20.
CheckResult check_defekt_constants();

}  // namespace nevlab::thm
