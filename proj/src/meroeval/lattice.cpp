#include "nevlab/meroeval/lattice.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

namespace nevlab::mero {

namespace {

constexpr int kLaurentTerms = 16;
constexpr double kLaurentRadius = 0.25;

/// Lagrange-Gauss reduction of the period pair.
void reduce_basis(cplx& p1, cplx& p2) {
  for (int it = 0; it < 64; ++it) {
    if (std::abs(p2) < std::abs(p1)) std::swap(p1, p2);
    double mu = std::round((p2 * std::conj(p1)).real() / std::norm(p1));
    if (mu == 0.0) break;
    p2 -= mu * p1;
  }
  if (std::abs(p2) < std::abs(p1)) std::swap(p1, p2);
  if ((p2 / p1).imag() < 0) p2 = -p2;
}

/// Half the period of the cycle around the slit [a, b]:
/// int_a^b dt / sqrt(4 (t-a)(t-b)(t-c)), with t = a + (b-a) sin^2(theta).
cplx slit_integral(cplx a, cplx b, cplx c) {
  // sqrt(c - t) is taken in a rotated frame where c - t stays in the right half-plane
  cplx p = c - a, q = c - b;
  cplx w = p / std::abs(p) + q / std::abs(q);
  cplx rot = std::conj(w) / std::abs(w);
  cplx rot_sqrt = std::sqrt(rot);
  using GL = boost::math::quadrature::gauss<double, 20>;
  const int panels = 16;
  const double h = (M_PI / 2) / panels;
  cplx sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    double mid = (k + 0.5) * h;
    for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
      double x = GL::abscissa()[i];
      double wgt = GL::weights()[i];
      for (double sgn : {1.0, -1.0}) {
        if (x == 0.0 && sgn < 0) continue;
        double th = mid + sgn * x * h / 2;
        double s = std::sin(th);
        cplx t = a + (b - a) * (s * s);
        sum += wgt * (h / 2) / (std::sqrt(rot * (c - t)) / rot_sqrt);
      }
    }
  }
  return sum;
}

}  // namespace

Lattice::Lattice(cplx omega1, cplx omega2, cplx g2, cplx g3) : g2_(g2), g3_(g3) {
  cplx p1 = 2.0 * omega1, p2 = 2.0 * omega2;
  if (std::abs((p2 / p1).imag()) < 1e-12) throw std::invalid_argument("degenerate period pair");
  reduce_basis(p1, p2);
  w1_ = p1 / 2.0;
  w2_ = p2 / 2.0;
  c_.assign(kLaurentTerms + 1, 0.0);
  c_[2] = g2 / 20.0;
  c_[3] = g3 / 28.0;
  for (int k = 4; k <= kLaurentTerms; ++k) {
    cplx s = 0.0;
    for (int m = 2; m <= k - 2; ++m) s += c_[static_cast<std::size_t>(m)] * c_[static_cast<std::size_t>(k - m)];
    c_[static_cast<std::size_t>(k)] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * s;
  }
  r0_ = kLaurentRadius * std::abs(p1);
  e_ = {wp(w1_).p, wp(w2_).p, wp(w1_ + w2_).p};
}

std::array<double, 2> Lattice::coords(cplx z) const {
  cplx p1 = 2.0 * w1_, p2 = 2.0 * w2_;
  double det = p1.real() * p2.imag() - p2.real() * p1.imag();
  double s = (z.real() * p2.imag() - p2.real() * z.imag()) / det;
  double t = (p1.real() * z.imag() - z.real() * p1.imag()) / det;
  return {s, t};
}

cplx Lattice::reduce(cplx z) const {
  auto [s, t] = coords(z);
  double m = std::round(s), n = std::round(t);
  cplx best = z - point(m, n);
  cplx base = best;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      if (i == 0 && j == 0) continue;
      cplx cand = base - point(i, j);
      if (std::abs(cand) < std::abs(best)) best = cand;
    }
  return best;
}

WpValue Lattice::laurent(cplx z) const {
  cplx z2 = z * z;
  cplx p = 0.0, dp = 0.0;
  // sum c_k z^(2k-2) and its derivative, Horner in z^2
  for (int k = kLaurentTerms; k >= 2; --k) {
    p = p * z2 + c_[static_cast<std::size_t>(k)];
    dp = dp * z2 + c_[static_cast<std::size_t>(k)] * (2.0 * k - 2.0);
  }
  p = p * z2;          // sum c_k z^(2k-2)
  dp = dp * z2 / z;    // sum (2k-2) c_k z^(2k-3)
  return {1.0 / z2 + p, -2.0 / (z2 * z) + dp, false};
}

WpValue Lattice::wp(cplx z) const {
  cplx r = reduce(z);
  if (r == 0.0) return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), true};
  int halvings = 0;
  cplx zs = r;
  while (std::abs(zs) > r0_) {
    zs *= 0.5;
    ++halvings;
  }
  WpValue v = laurent(zs);
  for (int i = 0; i < halvings; ++i) {
    cplx x = v.p, y = v.dp;
    cplx lam = (12.0 * x * x - g2_) / (2.0 * y);
    cplx x3 = lam * lam / 4.0 - 2.0 * x;
    cplx y3 = -(y + lam * (x3 - x));
    v = {x3, y3, false};
  }
  return v;
}

Lattice lattice_from_cubic(const std::array<cplx, 3>& e) {
  double scale = std::max({1.0, std::abs(e[0]), std::abs(e[1]), std::abs(e[2])});
  if (std::abs(e[0] + e[1] + e[2]) > 1e-12 * scale) throw std::invalid_argument("roots must sum to zero");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(e[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>(j)]) < 1e-12 * scale)
        throw std::invalid_argument("roots must be distinct");
  cplx g2 = -4.0 * (e[0] * e[1] + e[1] * e[2] + e[2] * e[0]);
  cplx g3 = 4.0 * e[0] * e[1] * e[2];
  // centre root: the slits to the other two roots must avoid the third one
  int centre = 0;
  double best = -1.0;
  for (int c = 0; c < 3; ++c) {
    cplx a = e[static_cast<std::size_t>((c + 1) % 3)] - e[static_cast<std::size_t>(c)];
    cplx b = e[static_cast<std::size_t>((c + 2) % 3)] - e[static_cast<std::size_t>(c)];
    // angle between the two slits; collinear roots need the middle one as centre
    double ang = std::abs(std::arg(b / a));
    if (ang > best) {
      best = ang;
      centre = c;
    }
  }
  cplx ec = e[static_cast<std::size_t>(centre)];
  cplx ea = e[static_cast<std::size_t>((centre + 1) % 3)];
  cplx eb = e[static_cast<std::size_t>((centre + 2) % 3)];
  cplx w1 = slit_integral(ec, ea, eb);
  cplx w2 = slit_integral(ec, eb, ea);
  return Lattice(w1, w2, g2, g3);
}

}  // namespace nevlab::mero
