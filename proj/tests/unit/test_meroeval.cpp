#include <doctest.h>

#include <cmath>
#include <random>

#include "nevlab/exactfield/parse.hpp"
#include "nevlab/meroeval/elliptic_rat.hpp"
#include "nevlab/meroeval/triple.hpp"
#include "pairs.hpp"

using namespace nevlab;
using mero::cplx;

namespace {

std::vector<cplx> random_points(int n, double radius, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-radius, radius);
  std::vector<cplx> out;
  for (int i = 0; i < n; ++i) out.emplace_back(d(rng), d(rng));
  return out;
}

// Eisenstein q-expansions of g2, g3 for the half periods w1, w2.
std::array<cplx, 2> invariants_from_periods(cplx w1, cplx w2) {
  cplx q = std::exp(cplx(0, M_PI) * (w2 / w1));
  cplx s3 = 0.0, s5 = 0.0;
  for (int n = 1; n < 60; ++n) {
    double sig3 = 0, sig5 = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        sig3 += std::pow(d, 3);
        sig5 += std::pow(d, 5);
      }
    cplx q2n = std::pow(q, 2 * n);
    s3 += sig3 * q2n;
    s5 += sig5 * q2n;
  }
  cplx k = M_PI / w1;
  return {std::pow(k, 4) / 12.0 * (1.0 + 240.0 * s3), std::pow(k, 6) / 216.0 * (1.0 - 504.0 * s5)};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Central difference with a step scaled to |f/f'|; points next to poles are skipped.
void check_derivatives(const mero::MeroFunc& f, cplx z) {
  mero::Jet j = f.eval(z);
  double local = std::abs(j.v) / std::abs(j.d1);
  if (j.pole || local < 0.02) return;
  double h = 1e-4 * std::min(1.0, local);
  mero::Jet jp = f.eval(z + h), jm = f.eval(z - h);
  if (jp.pole || jm.pole) return;
  cplx fd1 = (jp.v - jm.v) / (2 * h);
  cplx fd2 = (jp.d1 - jm.d1) / (2 * h);
  CHECK(std::abs(fd1 - j.d1) <= 1e-6 * std::max(1.0, std::abs(j.d1)));
  CHECK(std::abs(fd2 - j.d2) <= 1e-6 * std::max(1.0, std::abs(j.d2)));
}

}  // namespace

TEST_CASE("lattice invariants from roots") {
  auto lat = mero::lattice_from_cubic({5.0 / 3, 2.0 / 3, -7.0 / 3});
  CHECK(std::abs(lat.g2() - 52.0 / 3) < 1e-12);
  CHECK(std::abs(lat.g3() + 280.0 / 27) < 1e-12);
  CHECK((lat.omega2() / lat.omega1()).imag() > 0);

  auto lem = mero::lattice_from_cubic({1.0, 0.0, -1.0});
  CHECK(std::abs(lem.g2() - 4.0) < 1e-14);
  CHECK(std::abs(lem.g3()) < 1e-14);

  CHECK_THROWS(mero::lattice_from_cubic({1.0, 1.0, -2.0}));
  CHECK_THROWS(mero::lattice_from_cubic({1.0, 0.5, 0.0}));
}

TEST_CASE("periods agree with the q-series of the invariants") {
  for (auto roots : {std::array<cplx, 3>{5.0 / 3, 2.0 / 3, -7.0 / 3}, std::array<cplx, 3>{1.0, 0.0, -1.0},
                     std::array<cplx, 3>{cplx(1, 1), cplx(-2, 0.5), cplx(1, -1.5)}}) {
    auto lat = mero::lattice_from_cubic(roots);
    auto inv = invariants_from_periods(lat.omega1(), lat.omega2());
    CHECK(rel(inv[0], lat.g2()) < 1e-10);
    CHECK(rel(inv[1], lat.g3()) < 1e-10);
  }
}

TEST_CASE("wp: half periods, parity, periodicity, differential equation") {
  for (auto roots : {std::array<cplx, 3>{5.0 / 3, 2.0 / 3, -7.0 / 3}, std::array<cplx, 3>{1.0, 0.0, -1.0},
                     std::array<cplx, 3>{cplx(0.3, 1.1), cplx(-0.9, -0.2), cplx(0.6, -0.9)}}) {
    auto lat = mero::lattice_from_cubic(roots);
    auto h1 = lat.wp(lat.omega1());
    CHECK(std::min({std::abs(h1.p - roots[0]), std::abs(h1.p - roots[1]), std::abs(h1.p - roots[2])}) < 1e-9);
    CHECK(std::abs(h1.dp) < 1e-7);
    CHECK(lat.wp(0.0).pole);
    CHECK(lat.wp(lat.point(2, -1)).pole);
    for (cplx z : random_points(100, 3.0, 7)) {
      auto w = lat.wp(z), wm = lat.wp(-z), ws = lat.wp(z + 2.0 * lat.omega1()), wt = lat.wp(z + 2.0 * lat.omega2());
      double sc = std::max(1.0, std::abs(w.p));
      CHECK(std::abs(w.p - wm.p) <= 1e-10 * sc);
      CHECK(std::abs(w.dp + wm.dp) <= 1e-10 * std::max(1.0, std::abs(w.dp)));
      CHECK(std::abs(w.p - ws.p) <= 1e-10 * sc);
      CHECK(std::abs(w.p - wt.p) <= 1e-10 * sc);
      cplx rhs = 4.0 * (w.p - roots[0]) * (w.p - roots[1]) * (w.p - roots[2]);
      CHECK(std::abs(w.dp * w.dp - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("rational functions of e^z") {
  auto gf = fixtures::gundersen_f();
  mero::RationalOfExp f(gf, "f");
  for (cplx z : random_points(50, 4.0, 3)) {
    cplx u = std::exp(z);
    auto j = f.eval(z);
    CHECK(rel(j.v, gf.eval(u)) < 1e-12);
    // -u(u+3)/(u-1)^3
    CHECK(rel(j.d1, -u * (u + 3.0) / std::pow(u - 1.0, 3)) < 1e-12);
    check_derivatives(f, z);
  }
  CHECK(f.eval(cplx(0, 2 * M_PI)).pole);
  auto poles = f.poles_in(mero::Box::square(0.0, 10.0));
  CHECK(poles.size() == 3);
  for (const auto& p : poles) {
    CHECK(p.order == 2);
    CHECK(std::abs(std::exp(p.z) - 1.0) < 1e-12);
  }

  mero::RationalOfExp e(fixtures::polya_f());
  CHECK(mero::spherical_derivative(e, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mero::spherical_derivative(e, 5.0) == doctest::Approx(std::exp(5.0) / (1 + std::exp(10.0))));
  mero::RationalOfExp c(exact::ExactFunc::constant(exact::Model::exp(), 3));
  for (cplx z : random_points(10, 5.0, 1)) CHECK(mero::spherical_derivative(c, z) == 0.0);
}

TEST_CASE("exp preimages stay in the box") {
  auto box = mero::Box::square(cplx(1, 2), 7.0);
  auto zs = mero::exp_preimages(-3.0, box);
  CHECK(zs.size() == 2);
  for (cplx z : zs) {
    CHECK(box.contains(z));
    CHECK(std::abs(std::exp(z) + 3.0) < 1e-12);
  }
  CHECK(mero::exp_preimages(0.0, box).empty());
}

TEST_CASE("Reinders curve parametrisation") {
  auto curve = mero::CurveParam::from_model(fixtures::reinders_model());
  CHECK(std::abs(curve.scale * curve.scale - 3.0) < 1e-14);
  CHECK(std::abs(curve.mean + 5.0 / 3) < 1e-14);
  for (cplx z : random_points(100, 2.0, 11)) {
    auto u = curve.u_jet(z);
    cplx rhs = 12.0 * u.v * (u.v + 1.0) * (u.v + 4.0);
    CHECK(std::abs(u.d1 * u.d1 - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    // u'' = P'(u)/2
    cplx pp = 18.0 * u.v * u.v + 60.0 * u.v + 24.0;
    CHECK(std::abs(u.d2 - pp) <= 1e-9 * std::max(1.0, std::abs(pp)));
  }
}

TEST_CASE("elliptic functions: evaluation, poles, periodicity of f#") {
  auto curve = mero::CurveParam::from_model(fixtures::reinders_model());
  mero::EllipticRat f(fixtures::reinders_f(), curve, "f");
  mero::EllipticRat g(fixtures::reinders_g(), curve, "g");
  auto per = f.periods().value();
  for (cplx z : random_points(50, 2.0, 5)) {
    auto u = curve.u_jet(z);
    CHECK(rel(f.eval(z).v, fixtures::reinders_f().eval(u.v, u.d1)) < 1e-12);
    check_derivatives(f, z);
    check_derivatives(g, z);
    for (cplx p : per) {
      CHECK(rel(f.eval(z + p).v, f.eval(z).v) < 1e-9);
      CHECK(std::abs(mero::spherical_derivative(g, z + p) - mero::spherical_derivative(g, z)) < 1e-9);
    }
    auto r = f.eval_reciprocal(z);
    CHECK(rel(r.v * f.eval(z).v, 1.0) < 1e-9);
  }
  // pole multiplicities per cell: f has order four, g has order four
  int total_f = 0, total_g = 0;
  for (const auto& p : f.cell_poles()) total_f += p.order;
  for (const auto& p : g.cell_poles()) total_g += p.order;
  CHECK(total_f == 4);
  CHECK(total_g == 4);
  for (const auto& p : f.cell_poles()) {
    double near = std::abs(f.eval(p.z + 1e-4).v);
    CHECK(near > 1e2);
  }
  // f# is doubly periodic: compare the grid maximum over two translated cells
  double m0 = 0, m1 = 0;
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) {
      cplx z = (i / 40.0) * per[0] + (j / 40.0) * per[1] + cplx(0.013, 0.007);
      m0 = std::max(m0, mero::spherical_derivative(f, z));
      m1 = std::max(m1, mero::spherical_derivative(f, z + 3.0 * per[0] - 2.0 * per[1]));
    }
  CHECK(std::isfinite(m0));
  CHECK(std::abs(m0 - m1) < 1e-6);
}

TEST_CASE("inverse wp") {
  auto lat = mero::lattice_from_cubic({5.0 / 3, 2.0 / 3, -7.0 / 3});
  for (cplx t : {cplx(0.3, 0.4), cplx(-5, 1), cplx(10, 0)}) {
    auto zs = mero::inverse_wp(lat, t);
    CHECK(zs.size() == 2);
    for (cplx z : zs) CHECK(std::abs(lat.wp(z).p - t) < 1e-10 * std::abs(t));
  }
}

TEST_CASE("triple: alpha and the differential equation of v") {
  auto a = mero::triple_alpha();
  CHECK(a * a * a == exact::Coeff(-1));
  CHECK_THROWS(mero::make_triple(exact::Coeff(-1)));
  CHECK_THROWS(mero::make_triple(exact::Coeff(2)));

  auto sys = mero::make_triple(a);
  cplx al = sys->alpha();
  double worst_corrected = 0, worst_printed = 0;
  for (cplx z : random_points(100, 2.0, 13)) {
    auto v = sys->u_curve().u_jet(z);
    cplx corrected = 4.0 * v.v * (v.v + 1.0) * (v.v + al);
    cplx printed = 4.0 * v.v * (v.v + 1.0) * (v.v - al);
    double sc = std::max(1.0, std::abs(corrected));
    worst_corrected = std::max(worst_corrected, std::abs(v.d1 * v.d1 - corrected) / sc);
    worst_printed = std::max(worst_printed, std::abs(v.d1 * v.d1 - printed) / sc);
  }
  CHECK(worst_corrected < 1e-9);
  // the sign used in the construction matters: the other sign is not satisfied
  CHECK(worst_printed > 1e-2);
}

TEST_CASE("triple branches: Vieta, residual, degenerate fibre, periods") {
  auto sys = mero::make_triple(mero::triple_alpha());
  cplx al = sys->alpha(), ab = std::conj(al);

  auto r0 = sys->roots_at(0.0);
  for (cplx w : r0) CHECK(std::abs(w) == 0.0);

  for (cplx z : random_points(30, 1.5, 17)) {
    auto u = sys->u_curve().u_jet(z);
    auto w = mero::triple_branches(*sys, z);
    cplx sum = w[0] + w[1] + w[2], prod = w[0] * w[1] * w[2];
    cplx s_expect = -3.0 * ((ab + 1.0) * u.v * u.v + 2.0 * u.v);
    CHECK(std::abs(sum - s_expect) <= 1e-9 * std::max(1.0, std::abs(s_expect)));
    CHECK(std::abs(prod - u.v * u.v * u.v) <= 1e-9 * std::max(1.0, std::abs(u.v * u.v * u.v)));
    auto c = sys->coefficients(u.v);
    for (cplx x : w) {
      cplx res = ((x + c[1]) * x + c[2]) * x + c[3];
      double scale = std::pow(std::abs(x), 3) + std::abs(c[1]) * std::norm(x) + std::abs(c[2]) * std::abs(x) + std::abs(c[3]);
      CHECK(std::abs(res) <= 1e-8 * scale);
    }
  }

  // the branch lattice has index three in the lattice of v
  auto up = sys->u_periods();
  auto bp = sys->periods();
  auto area = [](cplx a, cplx b) { return std::abs(a.real() * b.imag() - a.imag() * b.real()); };
  CHECK(area(bp[0], bp[1]) / area(up[0], up[1]) == doctest::Approx(3.0).epsilon(1e-9));

  std::array<mero::TripleBranch, 3> br{mero::TripleBranch(sys, 0), mero::TripleBranch(sys, 1), mero::TripleBranch(sys, 2)};
  int pole_total[3] = {0, 0, 0};
  for (int k = 0; k < 3; ++k)
    for (const auto& p : sys->cell_poles(k)) pole_total[k] += p.order;
  for (int k = 0; k < 3; ++k) CHECK(pole_total[k] == 6);

  for (cplx z : random_points(10, 1.5, 19)) {
    for (int k = 0; k < 3; ++k) {
      auto j = br[static_cast<std::size_t>(k)].eval(z);
      for (cplx p : bp) {
        auto jp = br[static_cast<std::size_t>(k)].eval(z + p);
        CHECK(rel(jp.v, j.v) < 1e-8);
      }
      check_derivatives(br[static_cast<std::size_t>(k)], z);
    }
    // translation by a period of v permutes the branches without fixing them all
    auto w0 = sys->branches(z);
    auto w1 = sys->branches(z + up[0] + up[1]);
    auto w2 = sys->branches(z + up[0]);
    int fixed = 0;
    for (int k = 0; k < 3; ++k) {
      double best = 1e300;
      for (int j = 0; j < 3; ++j) best = std::min(best, std::abs(w1[static_cast<std::size_t>(k)] - w0[static_cast<std::size_t>(j)]));
      CHECK(best < 1e-8 * std::max(1.0, std::abs(w1[static_cast<std::size_t>(k)])));
      if (std::abs(w2[static_cast<std::size_t>(k)] - w0[static_cast<std::size_t>(k)]) < 1e-8 * std::max(1.0, std::abs(w0[static_cast<std::size_t>(k)]))) ++fixed;
    }
    CHECK(fixed < 3);
  }
}

TEST_CASE("triple cursor follows the branch along a path") {
  auto sys = mero::make_triple(mero::triple_alpha());
  mero::TripleBranch b(sys, 1);
  cplx z0(0.21, 0.17);
  auto cur = b.cursor(z0);
  for (int i = 1; i <= 40; ++i) {
    cplx z = z0 + 0.8 * std::polar(1.0, 2 * M_PI * i / 40.0) - 0.8;
    auto j = cur->probe(z);
    REQUIRE(j.has_value());
    cur->commit();
    CHECK(rel(j->v, b.eval(z).v) < 1e-8);
  }
}
