#pragma once

#include <vector>

#include "nevlab/nevanlinna/apoints.hpp"

namespace nevlab::nev {

/// count points geometrically spaced from rmin to rmax (both included).
std::vector<double> geometric_grid(double rmin, double rmax, int count);

/// Throws std::invalid_argument unless the grid is positive and strictly increasing.
void check_grid(const std::vector<double>& grid);

/// Number of worker threads: NEVLAB_THREADS if set and positive, else hardware concurrency.
unsigned worker_threads();

struct CountingSeries {
  std::vector<double> N;
  std::vector<double> Nbar;
};

/// Integrated counting function of a weighted point set:
///   sum over 0 < |z| <= r of w log(r/|z|)  +  (weight at 0) log r.
double integrated_count(const std::vector<APoint>& pts, double r, bool distinct);

/// N and N-bar on the grid from an already located list (radius >= grid.back()).
CountingSeries counting_from(const APointList& pts, const std::vector<double>& grid);

/// N(r, a) and N-bar(r, a) of f on the grid.
CountingSeries counting_N(const MeroFunc& f, const ExtValue& a, const std::vector<double>& grid,
                          const LocateOptions& opt = {});

struct Proximity {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate
};

/// m(r, a) = (1/2pi) int log+ 1/|f - a| dtheta  (log+ |f| for a = infinity).
Proximity proximity_m(const MeroFunc& f, const ExtValue& a, double r, double tol = 1e-4);

struct TOptions {
  double panel_width = 0.25;  // radial Gauss-Legendre panel width
  double angular_tol = 1e-7;  // relative change between trapezoid doublings
  int max_angular_log2 = 15;
};

/// Ahlfors-Shimizu characteristic: T0(r) = int_0^r A(t)/t dt plus the constant that makes it
/// the spherical form m + N.  A constant function has T = 0.
std::vector<double> characteristic_T(const MeroFunc& f, const std::vector<double>& grid, const TOptions& opt = {});

/// N-bar of the points that are simple a-points of both f and g.  The lists must share
/// their locations up to the matching tolerance, otherwise LocateError.
std::vector<double> simple_common_from(const APointList& fa, const APointList& ga, const std::vector<double>& grid,
                                       double match_tol = 1e-6);

std::vector<double> simultaneous_simple_Ns(const MeroFunc& f, const MeroFunc& g, const ExtValue& a,
                                           const std::vector<double>& grid, const LocateOptions& opt = {});

/// min over the top half of the grid of num / den; `empty_value` if den vanishes on the whole grid.
double top_half_min_ratio(const std::vector<double>& num, const std::vector<double>& den, double empty_value);

/// liminf proxy for m(r, a) / T(r, f).
double deficiency_estimate(const MeroFunc& f, const ExtValue& a, const std::vector<double>& grid);

}  // namespace nevlab::nev
