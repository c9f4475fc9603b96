#pragma once

#include <stdexcept>
#include <vector>

#include "nevlab/meroeval/mero_func.hpp"

namespace nevlab::nev {

using mero::cplx;
using mero::ExtValue;
using mero::Jet;
using mero::MeroFunc;

/// Contour integration failed: a zero or pole of f - a sits on the path, or the step control gave up.
class ContourError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument-principle data of h = f - a (h = 1/f for a = infinity) along a closed path.
struct ContourResult {
  int winding = 0;         // (zeros - poles) of h inside, from the summed argument increments
  cplx integral = 0.0;     // quadrature of h'/h
  cplx moment = 0.0;       // quadrature of z h'/h
  double min_snr = 0.0;    // min |h| / noise(h) on the path
  int evaluations = 0;
  /// Distance of integral / (2 pi i) from the winding number.
  double integrality_gap() const;
};

/// Jet of h = f - a (or 1/f) from the jet of f; pole flag carried over.
Jet value_jet(const Jet& f, const ExtValue& a);
/// Noise of h from the noise of f.
double value_noise(double f_noise, const Jet& f, const ExtValue& a);

/// Closed polygon through the vertices (last joined to first).  Each quadrature step must match
/// the exact change of log h within rel_tol (relative) or rel_tol / 1000 (absolute).
ContourResult integrate_polygon(const MeroFunc& f, const ExtValue& a, const std::vector<cplx>& vertices,
                                double rel_tol = 1e-4);
/// Positively oriented circle.
ContourResult integrate_circle(const MeroFunc& f, const ExtValue& a, cplx centre, double radius,
                               double rel_tol = 1e-4);

}  // namespace nevlab::nev
