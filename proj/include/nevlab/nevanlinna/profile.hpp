#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nevlab/nevanlinna/functionals.hpp"

namespace nevlab::nev {

/// Series of one tracked value.  The g columns are empty for a single function.
struct ValueSeries {
  ExtValue value;
  std::vector<double> m_f, N_f, Nbar_f;
  std::vector<double> m_g, N_g, Nbar_g;
  std::vector<double> Ns;  // simultaneously simple, pair only
  int mult_max_f = 0, mult_max_g = 0;
};

struct NevProfile {
  std::string f_id, g_id;  // g_id empty for a single function
  std::vector<double> r_grid;
  std::vector<double> T_f, T_g, T;  // T = max(T_f, T_g)
  std::vector<ValueSeries> values;
  double locate_radius = 0.0;  // radius of the a-point lists (after nudging)
  double worst_integrality_gap = 0.0;
  double proximity_tol = 1e-4;

  bool is_pair() const { return !g_id.empty(); }
  const ValueSeries& series(const std::string& label) const;

  /// Violations of the structural invariants (nonnegativity, monotonicity, N_s <= N-bar <= N).
  std::vector<std::string> invariant_violations() const;

  std::string to_json() const;
  static NevProfile from_json(const std::string& text);
  std::string to_csv() const;
};

/// A functional of the profile did not converge; functional names it (e.g. "T(r,f)").
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string functional, const std::string& what)
      : std::runtime_error(functional + ": " + what), functional_(std::move(functional)) {}
  const std::string& functional() const { return functional_; }

 private:
  std::string functional_;
};

struct ProfileOptions {
  LocateOptions locate;
  TOptions t;
  bool with_proximity = true;
  double proximity_tol = 1e-4;
};

/// Profile of a single function or a pair (g may be null).
NevProfile compute_profile(const MeroFunc& f, const std::string& f_id, const MeroFunc* g, const std::string& g_id,
                           const std::vector<ExtValue>& values, const std::vector<double>& grid,
                           const ProfileOptions& opt = {});

/// liminf proxy of N_s / N-bar (N-bar of f); 1 when N-bar vanishes on the whole grid.
double tau_estimate(const NevProfile& p, const std::string& label);

/// 17 significant digits, round-trips exactly.
std::string format_double(double x);

}  // namespace nevlab::nev
