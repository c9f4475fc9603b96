#pragma once

#include <vector>

#include "nevlab/nevanlinna/contour.hpp"

namespace nevlab::nev {

using mero::Box;

class LocateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct APoint {
  cplx z;
  int mult = 1;
};

struct APointList {
  ExtValue value;
  double r = 0.0;            // radius actually used (after nudging)
  double r_requested = 0.0;
  int nudges = 0;
  std::vector<APoint> points;  // sorted by |z|, then arg
  int total_with_mult = 0;
  double integrality_gap = 0.0;  // worst gap over all contours used
};

struct LocateOptions {
  double cluster_diameter = 1e-8;  // relative to the problem scale
  double snr_floor = 1e4;          // stop refining a cluster when |h| / noise drops below this
  double boundary_gap = 1e-6;      // a-points closer than this to |z| = r trigger a nudge
  double nudge_factor = 1e-4;
  int max_nudges = 3;
  double integrality_tol = 0.1;
};

/// a-points of f in the box with multiplicities (quadrisection + argument principle).
std::vector<APoint> locate_in_box(const MeroFunc& f, const ExtValue& a, const Box& box, const LocateOptions& opt = {},
                                  double* worst_gap = nullptr);

/// a-points of f in the closed disk |z| <= r.  Elliptic functions are located in one
/// period cell and translated.
APointList locate_apoints(const MeroFunc& f, const ExtValue& a, double r, const LocateOptions& opt = {});

/// A period cell of f whose boundary avoids the a-points (origin shifted as needed).
struct CellPoints {
  Box cell;
  std::vector<APoint> points;
};
CellPoints locate_in_cell(const MeroFunc& f, const ExtValue& a, const LocateOptions& opt = {});

}  // namespace nevlab::nev
