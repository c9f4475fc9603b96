#include "nevlab/meroeval/elliptic_rat.hpp"

#include <cmath>
#include <stdexcept>

namespace nevlab::mero {

namespace {

constexpr double kNoise = 1e-13;

std::array<double, 2> coords_in(cplx z, cplx p1, cplx p2) {
  double det = p1.real() * p2.imag() - p2.real() * p1.imag();
  return {(z.real() * p2.imag() - p2.real() * z.imag()) / det, (p1.real() * z.imag() - z.real() * p1.imag()) / det};
}

/// Representative of z modulo the lattice with coordinates in [0, 1).
cplx to_cell(cplx z, cplx p1, cplx p2) {
  auto [a, b] = coords_in(z, p1, p2);
  return z - std::floor(a) * p1 - std::floor(b) * p2;
}

}  // namespace

CurveParam CurveParam::from_model(const exact::Model& model, cplx phase) {
  if (!model.is_elliptic() || model.curve().degree() != 3) throw std::invalid_argument("curve must be a cubic");
  CPoly p(model.curve());
  cplx s = std::sqrt(p.c[3] / 4.0);
  cplx m = -p.c[2] / (3.0 * p.c[3]);
  auto us = roots(p);
  std::array<cplx, 3> e{us[0] - m, us[1] - m, us[2] - m};
  // remove the rounding residue of the root sum
  cplx drift = (e[0] + e[1] + e[2]) / 3.0;
  for (auto& x : e) x -= drift;
  return {lattice_from_cubic(e), s, m, phase};
}

std::array<cplx, 2> CurveParam::periods() const {
  return {2.0 * lattice.omega1() / scale, 2.0 * lattice.omega2() / scale};
}

Jet CurveParam::u_jet(cplx z) const {
  WpValue w = lattice.wp(scale * z + phase);
  if (w.pole) return {0.0, 0.0, 0.0, true};
  cplx pp = 6.0 * w.p * w.p - lattice.g2() / 2.0;
  return {w.p + mean, scale * w.dp, scale * scale * pp, false};
}

std::vector<cplx> inverse_wp(const Lattice& lat, cplx t) {
  const cplx p1 = 2.0 * lat.omega1(), p2 = 2.0 * lat.omega2();
  const double tol = 1e-11 * (1.0 + std::abs(t));
  const int grid = 16;
  std::vector<cplx> out;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      cplx z = ((i + 0.5) / grid) * p1 + ((j + 0.5) / grid) * p2;
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        WpValue w = lat.wp(z);
        if (w.pole || w.dp == 0.0) break;
        cplx step = (w.p - t) / w.dp;
        double cap = 0.1 * std::abs(lat.omega1());
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        z -= step;
        if (std::abs(w.p - t) < tol && std::abs(step) < 1e-13 * std::abs(lat.omega1())) {
          ok = true;
          break;
        }
      }
      if (!ok) continue;
      z = to_cell(z, p1, p2);
      bool dup = false;
      for (cplx q : out) {
        cplx d = to_cell(z - q + 0.5 * (p1 + p2), p1, p2) - 0.5 * (p1 + p2);
        if (std::abs(d) < 1e-7 * std::abs(p1)) dup = true;
      }
      if (!dup) out.push_back(z);
    }
  return out;
}

std::vector<PoleSite> periodic_sites(const std::vector<PoleSite>& cell, const std::array<cplx, 2>& periods,
                                     const Box& box) {
  std::vector<PoleSite> out;
  const cplx corners[4] = {box.origin, box.origin + box.e1, box.origin + box.e2, box.origin + box.e1 + box.e2};
  for (const auto& site : cell) {
    double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
    for (cplx c : corners) {
      auto [a, b] = coords_in(c - site.z, periods[0], periods[1]);
      amin = std::min(amin, a);
      amax = std::max(amax, a);
      bmin = std::min(bmin, b);
      bmax = std::max(bmax, b);
    }
    for (long m = static_cast<long>(std::floor(amin)); m <= static_cast<long>(std::ceil(amax)); ++m)
      for (long n = static_cast<long>(std::floor(bmin)); n <= static_cast<long>(std::ceil(bmax)); ++n) {
        cplx z = site.z + static_cast<double>(m) * periods[0] + static_cast<double>(n) * periods[1];
        if (box.contains(z)) out.push_back({z, site.order});
      }
  }
  return out;
}

EllipticRat::EllipticRat(exact::ExactFunc expr, CurveParam curve, std::string name)
    : r_(std::move(expr)), curve_(std::move(curve)), name_(std::move(name)) {
  if (!r_.model().is_elliptic()) throw std::invalid_argument("EllipticRat needs an elliptic-model function");
  exact::ExactFunc d1 = r_.derive();
  f_ = {CFunc(r_), CFunc(d1), CFunc(d1.derive())};
  if (r_.is_zero()) return;
  exact::ExactFunc inv = r_.inverse();
  exact::ExactFunc i1 = inv.derive();
  inv_ = std::array<CFunc, 3>{CFunc(inv), CFunc(i1), CFunc(i1.derive())};

  const Lattice& lat = curve_.lattice;
  auto [p1, p2] = curve_.periods();
  auto to_z = [&](cplx zeta) { return to_cell((zeta - curve_.phase) / curve_.scale, p1, p2); };
  exact::Divisor div = exact::divisor(r_);
  for (const auto& term : div.terms) {
    if (term.places.kind == exact::PlaceSet::Kind::AtInfinity) ord_inf_ = term.order;
  }
  for (const auto& term : div.poles()) {
    const auto& ps = term.places;
    using K = exact::PlaceSet::Kind;
    if (ps.kind == K::AtInfinity) {
      cell_poles_.push_back({to_z(0.0), term.order});
      continue;
    }
    CPoly sheet(ps.sheet);
    for (cplx ur : roots(CPoly(ps.locus))) {
      cplx t = ur - curve_.mean;
      if (ps.kind == K::Branch) {
        cplx best = lat.omega1();
        for (cplx h : {lat.omega2(), lat.omega1() + lat.omega2()})
          if (std::abs(lat.wp(h).p - t) < std::abs(lat.wp(best).p - t)) best = h;
        cell_poles_.push_back({to_z(best), term.order});
        continue;
      }
      auto zs = inverse_wp(lat, t);
      if (ps.kind == K::Plain) {
        for (cplx zeta : zs) cell_poles_.push_back({to_z(zeta), term.order});
        continue;
      }
      // Sheet: keep the preimage whose y matches Y(u)
      cplx y = sheet(ur);
      cplx best = zs.front();
      for (cplx zeta : zs)
        if (std::abs(curve_.scale * lat.wp(zeta).dp - y) < std::abs(curve_.scale * lat.wp(best).dp - y)) best = zeta;
      cell_poles_.push_back({to_z(best), term.order});
    }
  }
}

Jet EllipticRat::eval_with(const std::array<CFunc, 3>& fs, cplx z, bool reciprocal) const {
  Jet u = curve_.u_jet(z);
  if (u.pole) {
    int ord = reciprocal ? -ord_inf_ : ord_inf_;
    if (ord < 0) return {0.0, 0.0, 0.0, true};
    // finite limit at a lattice point: evaluate next to it
    auto per = curve_.periods();
    u = curve_.u_jet(z + 1e-7 * std::abs(per[0]) * cplx(0.6, 0.8));
  }
  cplx den = fs[0].d(u.v);
  if (den == 0.0) return {0.0, 0.0, 0.0, true};
  return {fs[0](u.v, u.d1), fs[1](u.v, u.d1), fs[2](u.v, u.d1), false};
}

Jet EllipticRat::eval(cplx z) const { return eval_with(f_, z, false); }

Jet EllipticRat::eval_reciprocal(cplx z) const {
  if (!inv_) return {0.0, 0.0, 0.0, true};
  return eval_with(*inv_, z, true);
}

std::vector<PoleSite> EllipticRat::poles_in(const Box& box) const { return periodic_sites(cell_poles_, periods().value(), box); }

double EllipticRat::noise(cplx z, const Jet& j) const {
  Jet u = curve_.u_jet(z);
  if (u.pole) return kNoise * std::abs(j.v);
  double au = std::abs(u.v);
  double num = f_[0].a.abs_scale(au) + f_[0].b.abs_scale(au) * std::abs(u.d1);
  cplx den = f_[0].d(u.v);
  // u and y carry absolute errors on the scale of wp and wp' (cancellation against the mean)
  double ub = std::abs(u.v - curve_.mean) + std::abs(curve_.mean);
  double yb = std::abs(u.d1) + 2 * std::abs(curve_.scale) * (std::pow(ub, 1.5) + 1);
  double h = 1e-6 * (1 + au);
  double fu = std::abs(f_[0](u.v + h, u.d1) - f_[0](u.v - h, u.d1)) / (2 * h);
  double fy = std::abs(f_[0].b(u.v) / den);
  return kNoise * (num / std::abs(den) + std::abs(j.v) + fu * ub + fy * yb);
}

std::shared_ptr<const MeroFunc> EllipticRat::minus(const exact::Coeff& a) const {
  return std::make_shared<EllipticRat>(r_ - exact::ExactFunc::constant(r_.model(), a), curve_, name_ + "-a");
}

std::string EllipticRat::describe() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "; u = wp((%.6g%+.6gi) z) %+.6g%+.6gi", curve_.scale.real(), curve_.scale.imag(),
                curve_.mean.real(), curve_.mean.imag());
  std::string s = r_.str() + buf;
  return name_.empty() ? s : name_ + " = " + s;
}

}  // namespace nevlab::mero
