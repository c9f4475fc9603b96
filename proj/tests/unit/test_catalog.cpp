#include <doctest.h>

#include <cmath>

#include "nevlab/catalog/catalog.hpp"
#include "nevlab/exactfield/identities.hpp"
#include "pairs.hpp"

using namespace nevlab;
using catalog::ExampleId;
using exact::Coeff;

TEST_CASE("ids round-trip") {
  for (auto id : catalog::all_ids()) CHECK(catalog::parse_id(catalog::id_name(id)) == id);
  CHECK_FALSE(catalog::parse_id("nosuch"));
  CHECK(catalog::all_ids().size() == 4);
}

TEST_CASE("gundersen entry") {
  auto e = catalog::build(ExampleId::gundersen);
  CHECK(e.exact[0] == fixtures::gundersen_f());
  CHECK(e.exact[1] == fixtures::gundersen_g());
  std::vector<std::string> labels;
  for (const auto& v : e.values) labels.push_back(v.numeric.label);
  CHECK(labels == std::vector<std::string>{"1", "0", "inf", "-1/8"});
  CHECK(e.exact_values()[3] == exact::ExactValue::finite(Coeff::fraction(-1, 8)));
  auto pats = catalog::expected_patterns(ExampleId::gundersen);
  CHECK(pats.at("0") == catalog::Pattern{{1, 2}});
  CHECK(pats.at("inf") == catalog::Pattern{{2, 1}});
  // f and g differ numerically from each other: g = (u+1)^2/(8(u-1)) at z = 1
  double u = std::exp(1.0);
  CHECK(e.numeric[1]->eval(1.0).v.real() == doctest::Approx((u + 1) * (u + 1) / (8 * (u - 1))));
  auto row = catalog::computed_row(e);
  CHECK(row.psi.constant_value() == Coeff(8));
  CHECK(row.phi == e.printed_row->phi);
  CHECK(e.to_json().find("\"table_row\"") != std::string::npos);
}

TEST_CASE("polya entry") {
  auto e = catalog::build(ExampleId::polya);
  auto row = catalog::computed_row(e);
  CHECK(row.psi.constant_value() == Coeff(1));
  CHECK(row.phi == exact::parse_expr("1/u^2", exact::Model::exp()));
  CHECK(row.phi_f == e.printed_row->phi_f);
  CHECK(row.phi_g == e.printed_row->phi_g);
  CHECK(e.pairs.size() == 1);
  CHECK(e.default_grid.size() == 16);
  CHECK(e.default_grid.front() == 2.0);
  CHECK(e.default_grid.back() == 30.0);
}

TEST_CASE("reinders entry") {
  auto e = catalog::build(ExampleId::reinders);
  CHECK(e.exact[0] == fixtures::reinders_f());
  CHECK(e.exact[1] == fixtures::reinders_g());
  // u = wp(sqrt3 z) - 5/3: wp roots 5/3, 2/3, -7/3 are the curve roots 0, -1, -4 shifted
  CHECK(e.curve->mean.real() == doctest::Approx(-5.0 / 3));
  CHECK(std::abs(e.curve->scale * e.curve->scale) == doctest::Approx(3.0));
  auto p = e.exact[0].model().curve();
  double worst = 0.0;
  for (auto z : catalog::sample_points(100, 3.0, 99)) {
    auto j = e.curve->u_jet(z);
    if (j.pole) continue;
    // 12 u (u+1)(u+4), written out independently
    mero::cplx rhs = 12.0 * j.v * (j.v + 1.0) * (j.v + 4.0);
    worst = std::max(worst, std::abs(j.d1 * j.d1 - rhs) / std::max(1.0, std::norm(j.d1)));
    CHECK(catalog::ode_residual(*e.curve, p, z) < 1e-9);
  }
  CHECK(worst < 1e-9);
  auto row = catalog::computed_row(e);
  CHECK(row.psi.constant_value() == Coeff(144));
  // printed Phi cell differs from Phi_f / Phi_g by a factor 3
  CHECK_FALSE(row.phi == e.printed_row->phi);
  CHECK(row.phi * Coeff(3) == e.printed_row->phi);
  bool logged = false;
  for (const auto& l : e.verification_log)
    if (l.find("printed") != std::string::npos) logged = true;
  CHECK(logged);
  for (const auto& v : e.values) {
    auto rep = exact::sharing_report(e.exact[0], e.exact[1], v.exact);
    CHECK_FALSE(rep.cm);
  }
}

TEST_CASE("triple entry") {
  auto e = catalog::build(ExampleId::steinmetz_triple);
  CHECK_FALSE(e.has_exact());
  CHECK_THROWS_AS(catalog::computed_row(e), std::invalid_argument);
  Coeff al = e.values[3].exact.value;
  CHECK(al * al * al == Coeff(-1));
  CHECK_FALSE(al == Coeff(-1));
  CHECK(e.numeric.size() == 3);
  CHECK(e.pairs.size() == 3);
  CHECK(e.pair("1-2").f == 1);
  CHECK_THROWS(e.pair("0-0"));
  auto bp = e.triple->periods();
  CHECK(e.default_grid.back() == doctest::Approx(3 * std::min(std::abs(bp[0]), std::abs(bp[1]))));
  auto rep = catalog::triple_cell_report(e);
  REQUIRE(rep.size() == 4);
  for (const auto& r : rep)
    for (const auto& m : r.mults) CHECK(m == std::vector<int>{1, 1, 4});
}
