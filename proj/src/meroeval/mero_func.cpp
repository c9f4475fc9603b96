#include "nevlab/meroeval/mero_func.hpp"

#include <cmath>
#include <limits>

namespace nevlab::mero {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

Jet reciprocal(const Jet& j) {
  if (j.pole) return {0.0, 0.0, 0.0, false};
  if (j.v == 0.0) return {0.0, 0.0, 0.0, true};
  cplx r = 1.0 / j.v;
  return {r, -j.d1 * r * r, (2.0 * j.d1 * j.d1 - j.v * j.d2) * r * r * r, false};
}

ExtValue ExtValue::finite(cplx a, std::string label) {
  if (label.empty()) {
    char buf[64];
    if (a.imag() == 0.0) std::snprintf(buf, sizeof buf, "%.17g", a.real());
    else std::snprintf(buf, sizeof buf, "%.17g%+.17gi", a.real(), a.imag());
    label = buf;
  }
  return {false, a, std::move(label), std::nullopt};
}

ExtValue ExtValue::from_exact(const exact::ExactValue& v) {
  if (v.infinite) return infinity();
  ExtValue e = finite(v.value.to_complex(), v.value.str());
  e.exact = v.value;
  return e;
}

std::array<double, 2> Box::coords(cplx z) const {
  cplx w = z - origin;
  double det = e1.real() * e2.imag() - e2.real() * e1.imag();
  double s = (w.real() * e2.imag() - e2.real() * w.imag()) / det;
  double t = (e1.real() * w.imag() - w.real() * e1.imag()) / det;
  return {s, t};
}

bool Box::contains(cplx z, double margin) const {
  auto [s, t] = coords(z);
  return s >= -margin && s <= 1 + margin && t >= -margin && t <= 1 + margin;
}

Box Box::grown(double frac) const { return {origin - frac * (e1 + e2), (1 + 2 * frac) * e1, (1 + 2 * frac) * e2}; }

std::unique_ptr<Cursor> MeroFunc::cursor(cplx z0) const { return std::make_unique<PlainCursor>(*this, z0); }

double MeroFunc::noise(cplx, const Jet& j) const { return 64 * kEps * std::abs(j.v); }

double spherical_derivative(const Jet& j) {
  if (j.pole) return 0.0;
  double a = std::abs(j.v);
  if (a <= 1.0) return std::abs(j.d1) / (1.0 + a * a);
  // |(1/f)'| / (1 + |1/f|^2) is the same quantity
  double ia = 1.0 / a;
  return std::abs(j.d1) * ia * ia / (1.0 + ia * ia);
}

double spherical_derivative(const MeroFunc& f, cplx z) {
  Jet j = f.eval(z);
  if (!j.pole && std::abs(j.v) <= 1.0) return spherical_derivative(j);
  Jet r = f.eval_reciprocal(z);
  if (r.pole) return spherical_derivative(j);
  double a = std::abs(r.v);
  return std::abs(r.d1) / (1.0 + a * a);
}

std::optional<Jet> PlainCursor::probe(cplx z) {
  pz_ = z;
  pjet_ = f_.eval(z);
  return pjet_;
}

void PlainCursor::commit() {
  z_ = pz_;
  jet_ = pjet_;
}

std::vector<cplx> exp_preimages(cplx u, const Box& box) {
  std::vector<cplx> out;
  if (u == 0.0) return out;
  cplx l = std::log(u);
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (cplx c : {box.origin, box.origin + box.e1, box.origin + box.e2, box.origin + box.e1 + box.e2}) {
    ymin = std::min(ymin, c.imag());
    ymax = std::max(ymax, c.imag());
  }
  const double tp = 2 * M_PI;
  long k0 = static_cast<long>(std::ceil((ymin - l.imag()) / tp)) - 1;
  long k1 = static_cast<long>(std::floor((ymax - l.imag()) / tp)) + 1;
  for (long k = k0; k <= k1; ++k) {
    cplx z = l + cplx(0, tp * static_cast<double>(k));
    if (box.contains(z)) out.push_back(z);
  }
  return out;
}

RationalOfExp::RationalOfExp(exact::ExactFunc r, std::string name) : r_(std::move(r)), name_(std::move(name)) {
  if (r_.model().is_elliptic()) throw std::invalid_argument("RationalOfExp needs an exp-model function");
  exact::ExactFunc d1 = r_.derive();
  f0_ = CFunc(r_);
  f1_ = CFunc(d1);
  f2_ = CFunc(d1.derive());
  if (!r_.is_zero()) {
    exact::ExactFunc inv = r_.inverse();
    exact::ExactFunc i1 = inv.derive();
    inv_ = std::array<CFunc, 3>{CFunc(inv), CFunc(i1), CFunc(i1.derive())};
  }
  exact::Poly den = r_.den();
  while (den.degree() > 0 && den.coeff(0).is_zero()) den = exact::Poly::exact_div(den, exact::Poly::x());
  for (const auto& [s, k] : den.squarefree()) pole_u_.emplace_back(roots(CPoly(s)), k);
}

Jet RationalOfExp::eval(cplx z) const {
  cplx u = std::exp(z);
  if (f0_.d(u) == 0.0) return {0.0, 0.0, 0.0, true};
  return {f0_(u), f1_(u), f2_(u), false};
}

Jet RationalOfExp::eval_reciprocal(cplx z) const {
  if (!inv_) return {0.0, 0.0, 0.0, true};
  cplx u = std::exp(z);
  const auto& iv = *inv_;
  if (iv[0].d(u) == 0.0) return {0.0, 0.0, 0.0, true};
  return {iv[0](u), iv[1](u), iv[2](u), false};
}

std::vector<PoleSite> RationalOfExp::poles_in(const Box& box) const {
  std::vector<PoleSite> out;
  for (const auto& [us, k] : pole_u_)
    for (cplx u : us)
      for (cplx z : exp_preimages(u, box)) out.push_back({z, k});
  return out;
}

double RationalOfExp::noise(cplx z, const Jet& j) const {
  double r = std::exp(z.real());
  return 4 * kEps * (f0_.a.abs_scale(r) + std::abs(j.v) * f0_.d.abs_scale(r)) / std::abs(f0_.d(std::exp(z)));
}

std::shared_ptr<const MeroFunc> RationalOfExp::minus(const exact::Coeff& a) const {
  return std::make_shared<RationalOfExp>(r_ - exact::ExactFunc::constant(r_.model(), a), name_ + "-a");
}

std::string RationalOfExp::describe() const {
  std::string s = r_.str("e^z");
  return name_.empty() ? s : name_ + " = " + s;
}

}  // namespace nevlab::mero
