#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nevlab/exactfield/identities.hpp"
#include "nevlab/theorems/grid_checks.hpp"
#include "pairs.hpp"

using namespace nevlab;
using exact::Coeff;
using exact::ExactValue;
using mero::ExtValue;
using thm::Relation;
using thm::Status;

namespace {

std::vector<double> grid8() { return nev::geometric_grid(2.0, 30.0, 8); }

template <class F>
std::vector<double> tab(const std::vector<double>& r, F fn) {
  std::vector<double> out;
  for (double x : r) out.push_back(fn(x));
  return out;
}

ExactValue q(long n, long d = 1) { return ExactValue::finite(Coeff::fraction(n, d)); }

/// Pair profile with synthetic series: T = r, N-bar = r/2 for every value, N_s = share * N-bar.
nev::NevProfile synthetic(double share, std::vector<ExtValue> vals) {
  nev::NevProfile p;
  p.f_id = "f";
  p.g_id = "g";
  p.r_grid = grid8();
  p.T_f = p.T_g = p.T = p.r_grid;
  for (auto& v : vals) {
    nev::ValueSeries s;
    s.value = v;
    s.Nbar_f = s.Nbar_g = s.N_f = s.N_g = tab(p.r_grid, [](double r) { return r / 2; });
    s.Ns = tab(p.r_grid, [&](double r) { return share * r / 2; });
    p.values.push_back(s);
  }
  return p;
}

std::vector<ExtValue> plain_values() {
  return {ExtValue::finite(1.0, "1"), ExtValue::finite(0.0, "0"), ExtValue::infinity(),
          ExtValue::finite(-0.125, "-1/8")};
}

}  // namespace

TEST_CASE("slack model: fit on the bottom half, decide on the top half") {
  auto r = grid8();
  auto rhs = tab(r, [](double x) { return 3 * x; });
  // violation exactly 0.5 log r: inside the fitted allowance
  auto ok = thm::grid_check("ok", Relation::le, r, tab(r, [](double x) { return 3 * x + 0.5 * std::log(x); }), rhs);
  CHECK(ok.status == Status::holds);
  double c = 0.0;
  for (std::size_t i = 0; i < r.size() / 2; ++i) c = std::max(c, 0.5 * std::log(r[i]) / thm::log_scale(r[i]));
  CHECK(ok.slack_c == doctest::Approx(c).epsilon(1e-14));
  // violation growing like r: far outside twice the allowance
  auto bad = thm::grid_check("bad", Relation::le, r, tab(r, [](double x) { return 4 * x; }), rhs);
  CHECK(bad.status == Status::fails);
  // constant violation of 1 below, 1.5 above: between one and two allowances
  std::vector<double> mid;
  for (std::size_t i = 0; i < r.size(); ++i) mid.push_back(rhs[i] + (i < r.size() / 2 ? 1.0 : 1.5) * thm::log_scale(r[i]));
  CHECK(thm::grid_check("mid", Relation::le, r, mid, rhs).status == Status::inconclusive);
  // satisfied inequality, no slack needed
  auto sat = thm::grid_check("sat", Relation::le, r, tab(r, [](double x) { return x; }), rhs);
  CHECK(sat.status == Status::holds);
  CHECK(sat.slack_c == 0.0);
  // equality is two-sided
  CHECK(thm::grid_check("eq", Relation::eq, r, tab(r, [](double x) { return 2 * x; }), rhs).status == Status::fails);
  CHECK_THROWS_AS(thm::grid_check("short", Relation::le, r, {1.0}, rhs), thm::MissingSeries);
  CHECK(thm::worst(Status::holds, Status::inconclusive) == Status::inconclusive);
  CHECK(thm::worst(Status::fails, Status::inconclusive) == Status::fails);
  // JSON carries margins and the slack constant
  auto js = ok.to_json();
  CHECK(js.find("\"margin\"") != std::string::npos);
  CHECK(js.find("\"c\"") != std::string::npos);
}

TEST_CASE("cross-ratio with infinity") {
  auto inf = ExactValue::inf();
  // (0, inf, 1, -1) = (0-1)/(0+1)
  CHECK(*thm::cross_ratio(q(0), inf, q(1), q(-1)) == Coeff(-1));
  // (1, 0, inf, -1/8) = (0+1/8)/(1+1/8) = 1/9
  CHECK(*thm::cross_ratio(q(1), q(0), inf, q(-1, 8)) == Coeff::fraction(1, 9));
  // all finite: (2, 3, 5, 7) = (-3)(-4)/((-5)(-2)) = 6/5
  CHECK(*thm::cross_ratio(q(2), q(3), q(5), q(7)) == Coeff::fraction(6, 5));
  CHECK_FALSE(thm::cross_ratio(q(2), q(2), q(5), q(7)));
  CHECK(thm::is_harmonic({q(0), inf, q(1), q(-1)}));
  CHECK_FALSE(thm::is_harmonic({q(0), q(1), inf, q(-1)}));
}

TEST_CASE("four-value conclusion: exact dichotomy") {
  using namespace fixtures;
  std::vector<ExactValue> pv{q(0), ExactValue::inf(), q(1), q(-1)};
  auto polya = thm::check_four_value_conclusion(polya_f(), polya_g(), pv);
  CHECK(polya.status == Status::holds);
  std::vector<ExactValue> gv{q(1), q(0), ExactValue::inf(), q(-1, 8)};
  CHECK(thm::check_four_value_conclusion(gundersen_f(), gundersen_g(), gv).status == Status::fails);
  std::vector<ExactValue> rv{q(-1), q(0), q(1), ExactValue::inf()};
  CHECK(thm::check_four_value_conclusion(reinders_f(), reinders_g(), rv).status == Status::fails);
  CHECK_THROWS_AS(thm::check_four_value_conclusion(polya_f(), polya_f(), pv), thm::PreconditionError);
  CHECK_THROWS_AS(thm::check_four_value_conclusion(polya_f(), polya_g(), {q(0), q(0), q(1), q(-1)}),
                  thm::PreconditionError);

  // invariance under relabelling
  std::vector<int> perm{0, 1, 2, 3};
  int n = 0;
  do {
    std::vector<ExactValue> p2, g2;
    for (int i : perm) p2.push_back(pv[i]), g2.push_back(gv[i]);
    CHECK(thm::check_four_value_conclusion(polya_f(), polya_g(), p2).status == Status::holds);
    CHECK(thm::check_four_value_conclusion(gundersen_f(), gundersen_g(), g2).status == Status::fails);
    ++n;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(n == 24);
}

TEST_CASE("four-value conclusion: sampled variant") {
  using namespace fixtures;
  mero::RationalOfExp pf(polya_f()), pg(polya_g()), gf(gundersen_f()), gg(gundersen_g());
  auto ev = [](const ExactValue& v) { return ExtValue::from_exact(v); };
  std::vector<ExtValue> pv{ev(q(0)), ExtValue::infinity(), ev(q(1)), ev(q(-1))};
  CHECK(thm::check_four_value_conclusion(pf, pg, pv).status == Status::holds);
  // numeric values only: the cross-ratio falls back to floating point
  std::vector<ExtValue> pn{ExtValue::finite(0.0, "0"), ExtValue::infinity(), ExtValue::finite(1.0, "1"),
                           ExtValue::finite(-1.0, "-1")};
  CHECK(thm::check_four_value_conclusion(pf, pg, pn).status == Status::holds);
  // harmonic values, but g is not the involution of f
  CHECK(thm::check_four_value_conclusion(pf, gg, pv).status == Status::fails);
  CHECK(thm::check_four_value_conclusion(gf, gg, plain_values()).status == Status::fails);
  CHECK_THROWS_AS(thm::check_four_value_conclusion(pf, pf, pv), thm::PreconditionError);
}

TEST_CASE("defekt factor minimisation is exact") {
  auto m = thm::minimize_defekt();
  CHECK(m.ell == 9);
  CHECK(m.value == mpq_class(209, 5));
  CHECK(thm::defekt_factor(5) == 77);
  // integer oracle: (2l+1)(l+2)/(l-4) compared by cross multiplication
  int best = 5;
  for (long l = 6; l <= 200; ++l) {
    long a = (2 * l + 1) * (l + 2), b = l - 4;
    long A = (2 * best + 1) * (best + 2), B = best - 4;
    if (a * B < A * b) best = static_cast<int>(l);
  }
  CHECK(best == 9);
  CHECK(thm::check_defekt_constants().status == Status::holds);
  CHECK_THROWS(thm::defekt_factor(4));
}

TEST_CASE("key lemma on synthetic profiles") {
  // N_s = 0: every left side vanishes
  for (const auto& c : thm::check_key_lemma(synthetic(0.0, plain_values()), false)) {
    INFO(c.summary());
    CHECK(c.status == Status::holds);
  }
  // N_s = N-bar / 3 for every value
  auto third = thm::check_key_lemma(synthetic(1.0 / 3, plain_values()), false);
  REQUIRE(third.size() == 6);
  for (const auto& c : third) CHECK(c.status == Status::holds);
  // R_f: 3 * sum N_s = sum N-bar <= 2 sum N-bar; ratio of sides 1/2
  CHECK(third[5].name == "R_f");
  CHECK(third[5].final_ratio() == doctest::Approx(0.5));
  // all points simple for both: R_f is violated linearly
  auto cm = thm::check_key_lemma(synthetic(1.0, plain_values()), false);
  CHECK(cm[5].status == Status::fails);
  CHECK_THROWS_AS(thm::check_key_lemma(synthetic(1.0, plain_values()), true), thm::PreconditionError);
  // harmonic values switch R_a to factor 2
  auto ev = [](const ExactValue& v) { return ExtValue::from_exact(v); };
  auto h = thm::check_key_lemma(synthetic(0.0, {ev(q(0)), ExtValue::infinity(), ev(q(1)), ev(q(-1))}), false);
  CHECK(h[0].note.find("factor 2") != std::string::npos);
  CHECK(thm::check_key_lemma(synthetic(0.0, plain_values()), false)[0].note.find("3/2") != std::string::npos);
  auto same = synthetic(0.0, plain_values());
  same.g_id = "f";
  CHECK_THROWS_AS(thm::check_key_lemma(same, false), thm::PreconditionError);
  auto missing = synthetic(0.0, plain_values());
  missing.values[2].Ns.clear();
  CHECK_THROWS_AS(thm::check_key_lemma(missing, false), thm::MissingSeries);
}

TEST_CASE("five-value conditions on synthetic data") {
  auto p = synthetic(0.0, plain_values());
  thm::FiveValueExtras x;
  x.nbar_diff = tab(p.r_grid, [](double r) { return 1.5 * r + 0.3 * std::log(r); });
  auto rs = thm::check_five_value_conditions(p, x);
  REQUIRE(rs.size() == 4);
  CHECK(rs[0].name == "N_a");
  CHECK(rs[0].status == Status::holds);
  CHECK(rs[1].status == Status::holds);  // sum N-bar = 4 * r/2 = 2T
  CHECK(rs[1].final_ratio() == doctest::Approx(1.0));
  CHECK(rs[2].status == Status::holds);  // N-bar(f-g) + N-bar(inf) = 2r + O(log r)
  CHECK(rs[3].status == Status::inconclusive);
  auto same = p;
  same.g_id = same.f_id;
  CHECK_THROWS_AS(thm::check_five_value_conditions(same), thm::PreconditionError);
  auto single = p;
  single.g_id.clear();
  CHECK_THROWS_AS(thm::check_five_value_conditions(single), thm::PreconditionError);
  auto missing = p;
  missing.T_g.clear();
  CHECK_THROWS_AS(thm::check_five_value_conditions(missing), thm::MissingSeries);
}

TEST_CASE("five-value conditions and Phi bound for the exponential pair") {
  using namespace fixtures;
  mero::RationalOfExp f(polya_f(), "exp"), g(polya_g(), "exp(-z)");
  auto ev = [](const ExactValue& v) { return ExtValue::from_exact(v); };
  std::vector<ExtValue> vals{ev(q(0)), ExtValue::infinity(), ev(q(1)), ev(q(-1))};
  auto grid = nev::geometric_grid(2.0, 30.0, 8);
  nev::ProfileOptions po;
  po.with_proximity = false;
  auto p = nev::compute_profile(f, "polya.f", &g, "polya.g", vals, grid, po);

  thm::FiveValueExtras x;
  x.b = ExtValue::finite(2.0, "2");
  x.nbar_f_b = nev::counting_N(f, *x.b, grid).Nbar;
  x.nbar_g_b = nev::counting_N(g, *x.b, grid).Nbar;
  mero::RationalOfExp diff(polya_f() - polya_g());
  x.nbar_diff = nev::counting_N(diff, ExtValue::finite(0.0, "0"), grid).Nbar;
  auto rs = thm::check_five_value_conditions(p, x);
  // zeros of e^z - 2 are log 2 + 2 pi i k
  double nb = 0.0;
  for (int k = -10; k <= 10; ++k) {
    double a = std::abs(std::complex<double>(std::log(2.0), 2 * M_PI * k));
    if (a <= 30.0) nb += std::log(30.0 / a);
  }
  CHECK(x.nbar_f_b->back() == doctest::Approx(nb).epsilon(1e-9));
  // N-bar(f-b) / T -> 1, sum N-bar / 2T -> 1, (N-bar(f-g) + N-bar(inf)) / 2T -> 1
  CHECK(std::abs(rs[3].final_ratio() - 1.0) < 0.1);
  CHECK(std::abs(rs[1].final_ratio() - 1.0) < 0.1);
  CHECK(std::abs(rs[2].final_ratio() - 1.0) < 0.1);
  CHECK_THROWS_AS(
      [&] {
        auto y = x;
        y.b = ExtValue::finite(1.0, "1");
        thm::check_five_value_conditions(p, y);
      }(),
      thm::PreconditionError);

  auto phis = exact::phi_pair(polya_f(), polya_g(), {Coeff(0), Coeff(1), Coeff(-1)});
  CHECK(phis.phi == parse_expr("1/u^2", Model::exp()));
  auto pb = thm::check_phi_growth_bound(p, phis.phi, true);
  INFO(pb.summary());
  CHECK(pb.status == Status::holds);
  // T(r, e^{-2z}) = 2r/pi
  auto lower_ratio = pb.lhs.back() / pb.rhs.back();
  CHECK(lower_ratio > 0);
  CHECK(thm::check_phi_growth_bound(p, phis.phi, false).status == Status::inconclusive);
  auto c = thm::check_phi_growth_bound(p, exact::ExactFunc::constant(Model::exp(), Coeff(1)), true);
  CHECK(c.status == Status::holds);
  CHECK(c.note.find("CM-all") != std::string::npos);
}

TEST_CASE("Psi constancy under bounded spherical derivatives") {
  using namespace fixtures;
  mero::RationalOfExp gf(gundersen_f()), gg(gundersen_g());
  std::vector<ExactValue> gv{q(1), q(0), ExactValue::inf(), q(-1, 8)};
  auto r = thm::check_psi_constancy_under_bounded_sharp(gf, gg, gundersen_f(), gundersen_g(), gv);
  INFO(r.witness[0]);
  CHECK(r.status == Status::holds);
  CHECK(r.witness[1] == "Psi = 8");

  auto curve = mero::CurveParam::from_model(reinders_model());
  mero::EllipticRat rf(reinders_f(), curve), rg(reinders_g(), curve);
  std::vector<ExactValue> rv{q(-1), q(0), q(1), ExactValue::inf()};
  auto rr = thm::check_psi_constancy_under_bounded_sharp(rf, rg, reinders_f(), reinders_g(), rv, {12.0, 61});
  CHECK(rr.status == Status::holds);
  CHECK(rr.witness[1] == "Psi = 144");

  mero::RationalOfExp one(exact::ExactFunc::constant(Model::exp(), Coeff(1)));
  CHECK_THROWS_AS(thm::check_psi_constancy_under_bounded_sharp(one, gg, exact::ExactFunc::constant(Model::exp(), Coeff(1)),
                                                               gundersen_g(), gv),
                  thm::PreconditionError);
}
