#include "nevlab/nevanlinna/apoints.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace nevlab::nev {

namespace {

constexpr double kFineTol = 1e-8;
constexpr int kMaxDepth = 80;

struct Count {
  int zeros = 0;
  cplx zero_sum = 0.0;
  double gap = 0.0;
  double snr = 0.0;
};

std::vector<cplx> corners(const Box& b) { return {b.origin, b.origin + b.e1, b.origin + b.e1 + b.e2, b.origin + b.e2}; }

Count count_box(const MeroFunc& f, const ExtValue& a, const Box& b, double tol = 1e-4) {
  ContourResult res = integrate_polygon(f, a, corners(b), tol);
  Count c;
  c.zeros = res.winding;
  c.zero_sum = res.moment / cplx(0, 2 * M_PI);
  for (const auto& p : f.poles_in(b)) {
    c.zeros += p.order;
    c.zero_sum += static_cast<double>(p.order) * p.z;
  }
  c.gap = res.integrality_gap();
  c.snr = res.min_snr;
  return c;
}

Count count_circle(const MeroFunc& f, const ExtValue& a, cplx centre, double rho, double tol = kFineTol) {
  ContourResult res = integrate_circle(f, a, centre, rho, tol);
  Count c;
  c.zeros = res.winding;
  c.zero_sum = res.moment / cplx(0, 2 * M_PI);
  for (const auto& p : f.poles_in(Box::square(centre, rho * 1.001))) {
    if (std::abs(p.z - centre) >= rho) continue;
    c.zeros += p.order;
    c.zero_sum += static_cast<double>(p.order) * p.z;
  }
  c.gap = res.integrality_gap();
  c.snr = res.min_snr;
  return c;
}

struct Estimate {
  cplx z;
  double err;  // rough position uncertainty
};

std::optional<Estimate> newton(const MeroFunc& f, const ExtValue& a, cplx z) {
  for (int it = 0; it < 40; ++it) {
    Jet j;
    try {
      j = f.eval(z);
    } catch (const mero::EvalError&) {
      return std::nullopt;
    }
    if (j.pole || j.d1 == 0.0) return std::nullopt;
    cplx h = j.v - a.a;
    double nz = value_noise(f.noise(z, j), j, a);
    cplx step = h / j.d1;
    if (!std::isfinite(std::abs(step))) return std::nullopt;
    if (std::abs(h) <= 4 * nz) return Estimate{z, 4 * nz / std::abs(j.d1)};
    z -= step;
    if (std::abs(step) <= 1e-14 * (1 + std::abs(z))) return Estimate{z, std::abs(step) + 4 * nz / std::abs(j.d1)};
  }
  return std::nullopt;
}

class Locator {
 public:
  Locator(const MeroFunc& f, const ExtValue& a, const LocateOptions& opt) : f_(f), a_(a), opt_(opt) {}

  void run(const Box& b, const Count& c, int depth) {
    if (c.zeros == 0) return;
    if (c.zeros < 0) throw LocateError("negative a-point count in a box");
    if (depth > kMaxDepth) throw LocateError("quadrisection depth limit reached");
    if (c.zeros == 1) {
      cplx z0 = c.zero_sum;
      auto zn = newton(f_, a_, b.contains(z0) ? z0 : b.at(0.5, 0.5));
      if (zn && !b.contains(zn->z, -0.01)) zn.reset();
      // near colliding branches Newton stalls at the noise level; the contour moment is then better
      if (zn && zn->err <= 1e-11 * (1 + std::abs(zn->z))) {
        out_.push_back({zn->z, 1});
        return;
      }
      auto zc = shrink(b, c);
      if (zc && (!zn || zc->err < zn->err)) zn = zc;
      if (zn) {
        out_.push_back({zn->z, 1});
        return;
      }
    } else if (auto zc = shrink(b, c)) {
      out_.push_back({zc->z, c.zeros});
      return;
    }
    split(b, c, depth);
  }

  std::vector<APoint> take() { return std::move(out_); }
  double worst_gap = 0.0;

 private:
  // Shrinking circles around the centroid.  Returns the cluster centre once the circles
  // reach the cluster diameter or the noise floor while still holding all c.zeros points.
  std::optional<Estimate> shrink(const Box& b, const Count& c) {
    cplx centre = c.zero_sum / static_cast<double>(c.zeros);
    if (!b.contains(centre)) return std::nullopt;
    double rho = b.diameter() / 4;
    double floor = opt_.cluster_diameter * std::max(1.0, std::abs(centre));
    cplx best = centre;
    double best_err = INFINITY;
    for (int k = 0; k < 40; ++k) {
      Count cc;
      try {
        cc = count_circle(f_, a_, centre, rho);
      } catch (const ContourError&) {
        // the circle ran into the noise floor of f; keep what the larger circles established
        if (k >= (c.zeros == 1 ? 1 : 2)) return Estimate{best, best_err};
        return std::nullopt;
      }
      if (cc.zeros != c.zeros) return std::nullopt;
      worst_gap = std::max(worst_gap, cc.gap);
      centre = cc.zero_sum / static_cast<double>(c.zeros);
      // the centroid is known to about rho times the relative accuracy of the quadrature
      double err = rho * (kFineTol + 8.0 / cc.snr);
      if (err < best_err) best = centre, best_err = err;
      // |h| on the next circle drops by about 8^zeros
      double next_snr = cc.snr / std::pow(8.0, c.zeros);
      if (next_snr < opt_.snr_floor || rho < floor) return Estimate{best, best_err};
      if (c.zeros == 1 && rho < 1e-6 * std::max(1.0, std::abs(centre))) return Estimate{best, best_err};
      rho /= 8;
    }
    return std::nullopt;
  }

  void split(const Box& b, const Count& c, int depth) {
    static const double kShift[][2] = {{0.0131, -0.0097}, {-0.0213, 0.0171}, {0.0377, 0.0291}, {-0.0419, -0.0353},
                                       {0.0607, -0.0511}, {-0.0733, 0.0689}};
    for (const auto& sh : kShift) {
      double s = 0.5 + sh[0], t = 0.5 + sh[1];
      Box kids[4] = {{b.origin, s * b.e1, t * b.e2},
                     {b.at(s, 0), (1 - s) * b.e1, t * b.e2},
                     {b.at(0, t), s * b.e1, (1 - t) * b.e2},
                     {b.at(s, t), (1 - s) * b.e1, (1 - t) * b.e2}};
      Count cnt[4];
      bool ok = true;
      int sum = 0;
      for (int k = 0; k < 4 && ok; ++k) {
        try {
          cnt[k] = count_box(f_, a_, kids[k]);
        } catch (const ContourError&) {
          ok = false;
          break;
        }
        if (cnt[k].gap > opt_.integrality_tol) ok = false;
        sum += cnt[k].zeros;
      }
      if (!ok || sum != c.zeros) continue;
      for (int k = 0; k < 4; ++k) {
        worst_gap = std::max(worst_gap, cnt[k].gap);
        run(kids[k], cnt[k], depth + 1);
      }
      return;
    }
    throw LocateError("no consistent subdivision of a box");
  }

  const MeroFunc& f_;
  ExtValue a_;
  LocateOptions opt_;
  std::vector<APoint> out_;
};

void sort_points(std::vector<APoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const APoint& p, const APoint& q) {
    double ap = std::abs(p.z), aq = std::abs(q.z);
    if (std::abs(ap - aq) > 1e-12 * std::max(1.0, ap)) return ap < aq;
    return std::arg(p.z) < std::arg(q.z);
  });
}

std::vector<APoint> poles_as_points(const MeroFunc& f, const Box& b) {
  std::vector<APoint> out;
  for (const auto& p : f.poles_in(b)) out.push_back({p.z, p.order});
  return out;
}

}  // namespace

std::vector<APoint> locate_in_box(const MeroFunc& f, const ExtValue& a, const Box& box, const LocateOptions& opt,
                                  double* worst_gap) {
  if (a.inf) return poles_as_points(f, box);
  if (f.is_constant()) {
    Jet j = f.eval(box.at(0.5, 0.5));
    if (j.v == a.a) throw LocateError("f is identically equal to a");
    return {};
  }
  Count c = count_box(f, a, box);
  if (c.gap > opt.integrality_tol) throw LocateError("argument integral far from an integer on the outer box");
  Locator loc(f, a, opt);
  loc.worst_gap = c.gap;
  loc.run(box, c, 0);
  if (worst_gap) *worst_gap = std::max(*worst_gap, loc.worst_gap);
  auto pts = loc.take();
  sort_points(pts);
  return pts;
}

CellPoints locate_in_cell(const MeroFunc& f, const ExtValue& a, const LocateOptions& opt) {
  auto per = f.periods();
  if (!per) throw LocateError("function has no period lattice");
  const auto& P = *per;
  static const double kOffset[][2] = {{0.0123, 0.0171}, {0.0379, 0.0213}, {0.0611, 0.0457},
                                      {0.0917, 0.0733}, {0.1291, 0.1103}, {0.1663, 0.1427}};
  std::string last = "no offset tried";
  for (const auto& off : kOffset) {
    Box cell{-0.5 * (P[0] + P[1]) + off[0] * P[0] + off[1] * P[1], P[0], P[1]};
    try {
      return {cell, locate_in_box(f, a, cell, opt)};
    } catch (const ContourError& e) {
      last = e.what();
    } catch (const LocateError& e) {
      last = e.what();
    }
  }
  throw LocateError("period cell: " + last);
}

APointList locate_apoints(const MeroFunc& f, const ExtValue& a, double r, const LocateOptions& opt) {
  if (!(r > 0)) throw LocateError("radius must be positive");
  APointList out;
  out.value = a;
  out.r_requested = r;

  // every candidate within radius r * (1 + margin)
  const double reach = r * (1 + 4 * opt.nudge_factor * (opt.max_nudges + 1));
  std::vector<APoint> all;
  double gap = 0.0;
  if (auto per = f.periods()) {
    CellPoints cp = locate_in_cell(f, a, opt);
    const auto& P = *per;
    Box lat{0.0, P[0], P[1]};
    for (const auto& p : cp.points) {
      double mlo = 1e300, mhi = -1e300, nlo = 1e300, nhi = -1e300;
      for (cplx c : {cplx(-reach, -reach), cplx(reach, -reach), cplx(reach, reach), cplx(-reach, reach)}) {
        auto st = lat.coords(c - p.z);
        mlo = std::min(mlo, st[0]);
        mhi = std::max(mhi, st[0]);
        nlo = std::min(nlo, st[1]);
        nhi = std::max(nhi, st[1]);
      }
      for (long m = static_cast<long>(std::floor(mlo)); m <= static_cast<long>(std::ceil(mhi)); ++m)
        for (long n = static_cast<long>(std::floor(nlo)); n <= static_cast<long>(std::ceil(nhi)); ++n) {
          cplx z = p.z + static_cast<double>(m) * P[0] + static_cast<double>(n) * P[1];
          if (std::abs(z) <= reach) all.push_back({z, p.mult});
        }
    }
  } else {
    Box b = Box::square(cplx(0.0071, 0.0043) * reach, reach * 1.03);
    all = locate_in_box(f, a, b, opt, &gap);
  }

  // poles of f are singular for the contour of f - a as well
  std::vector<cplx> blockers;
  for (const auto& p : all) blockers.push_back(p.z);
  if (!a.inf)
    for (const auto& s : f.poles_in(Box::square(0.0, reach))) blockers.push_back(s.z);
  double rr = r;
  for (;;) {
    bool close = false;
    for (cplx z : blockers)
      if (std::abs(std::abs(z) - rr) < opt.boundary_gap * std::max(1.0, rr)) close = true;
    if (!close) break;
    if (out.nudges == opt.max_nudges) throw LocateError("an a-point stays on the circle after nudging");
    rr *= 1 + opt.nudge_factor;
    ++out.nudges;
  }
  out.r = rr;
  for (const auto& p : all)
    if (std::abs(p.z) <= rr) {
      out.points.push_back(p);
      out.total_with_mult += p.mult;
    }
  sort_points(out.points);

  // independent check on the circle itself
  if (!a.inf && !f.is_constant()) {
    Count c = count_circle(f, a, 0.0, rr, 1e-6);
    gap = std::max(gap, c.gap);
    if (c.zeros != out.total_with_mult)
      throw LocateError("circle count " + std::to_string(c.zeros) + " disagrees with located total " +
                        std::to_string(out.total_with_mult));
  }
  out.integrality_gap = gap;
  return out;
}

}  // namespace nevlab::nev
