#include "nevlab/catalog/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"
#include "nevlab/exactfield/identities.hpp"
#include "nevlab/exactfield/parse.hpp"
#include "nevlab/nevanlinna/apoints.hpp"
#include "nevlab/nevanlinna/functionals.hpp"

namespace nevlab::catalog {

using exact::Coeff;
using exact::ExactFunc;
using exact::ExactValue;
using exact::Model;
using exact::parse_expr;
using exact::parse_poly;

namespace {

SharedValue shared(const ExactValue& v) { return {v, mero::ExtValue::from_exact(v)}; }
ExactValue q(long n, long d = 1) { return ExactValue::finite(Coeff::fraction(n, d)); }

double chordal(const mero::Jet& a, cplx b) {
  if (a.pole) return 1.0 / std::sqrt(1.0 + std::norm(b));
  return std::abs(a.v - b) / std::sqrt((1.0 + std::norm(a.v)) * (1.0 + std::norm(b)));
}

void fail_if(bool bad, const std::string& what) {
  if (bad) throw CatalogError(what);
}

/// Exact and numeric forms agree at 50 sample points.
void verify_agreement(ExampleEntry& e) {
  double worst = 0.0;
  for (std::size_t k = 0; k < e.exact.size(); ++k) {
    for (cplx z : sample_points(50, 3.0, 101 + static_cast<unsigned>(k))) {
      mero::Jet j = e.numeric[k]->eval(z);
      cplx ex;
      if (e.curve) {
        mero::Jet u = e.curve->u_jet(z);
        if (u.pole) continue;
        ex = e.exact[k].eval(u.v, u.d1);
      } else {
        ex = e.exact[k].eval(std::exp(z));
      }
      if (!std::isfinite(std::abs(ex))) continue;
      worst = std::max(worst, chordal(j, ex));
    }
  }
  std::ostringstream os;
  os << "exact vs numeric forms at 50 points: max chordal difference " << worst;
  e.verification_log.push_back(os.str());
  fail_if(!(worst < 1e-9), e.name + ": exact and numeric forms disagree");
}

void verify_patterns(ExampleEntry& e) {
  auto expect = expected_patterns(e.id);
  for (const auto& v : e.values) {
    auto rep = exact::sharing_report(e.exact[0], e.exact[1], v.exact);
    Pattern got;
    for (const auto& [k, n] : rep.histogram()) got.insert(k);
    bool ok = rep.shared && got == expect.at(v.numeric.label);
    e.verification_log.push_back("sharing of " + v.numeric.label + ": " + rep.str());
    fail_if(!ok, e.name + ": sharing pattern of " + v.numeric.label + " differs from the expected one");
  }
}

void verify_row(ExampleEntry& e) {
  TableRow c = computed_row(e);
  const TableRow& p = *e.printed_row;
  fail_if(!(c.psi == p.psi), e.name + ": Psi differs from the table");
  fail_if(!(c.phi_f == p.phi_f) || !(c.phi_g == p.phi_g), e.name + ": Phi_f or Phi_g differs from the table");
  e.verification_log.push_back("Psi = " + c.psi.str() + ", Phi_f = " + c.phi_f.str() + ", Phi_g = " + c.phi_g.str());
  if (c.phi == p.phi)
    e.verification_log.push_back("Phi = " + c.phi.str() + " as printed");
  else
    e.verification_log.push_back("Phi = Phi_f/Phi_g = " + c.phi.str() + "; printed " + p.phi.str());
}

void verify_curve(ExampleEntry& e, const exact::Poly& p, const std::string& label) {
  double worst = 0.0;
  for (cplx z : sample_points(100, 3.0, 7)) {
    if (e.curve->u_jet(z).pole) continue;
    worst = std::max(worst, ode_residual(*e.curve, p, z));
  }
  std::ostringstream os;
  os << "ODE " << label << " residual at 100 points: " << worst;
  e.verification_log.push_back(os.str());
  fail_if(!(worst < 1e-9), e.name + ": ODE residual too large");
}

std::vector<double> exp_grid() { return nev::geometric_grid(2.0, 30.0, 16); }

ExampleEntry make_polya() {
  ExampleEntry e;
  e.id = ExampleId::polya;
  e.name = "polya";
  e.description = "f = e^z, g = e^-z";
  Model m = Model::exp();
  e.exact = {parse_expr("u", m), parse_expr("1/u", m)};
  e.function_names = {"f", "g"};
  e.values = {shared(q(-1)), shared(q(0)), shared(q(1)), shared(ExactValue::inf())};
  e.printed_row = TableRow{parse_expr("1/u", m), parse_expr("u", m), parse_expr("1", m), parse_expr("1/u^2", m)};
  e.default_grid = exp_grid();
  return e;
}

ExampleEntry make_gundersen() {
  ExampleEntry e;
  e.id = ExampleId::gundersen;
  e.name = "gundersen";
  e.description = "f = (e^z+1)/(e^z-1)^2, g = (e^z+1)^2/(8(e^z-1))";
  Model m = Model::exp();
  e.exact = {parse_expr("(u+1)/(u-1)^2", m), parse_expr("(u+1)^2/(8*(u-1))", m)};
  e.function_names = {"f", "g"};
  e.values = {shared(q(1)), shared(q(0)), shared(ExactValue::inf()), shared(q(-1, 8))};
  e.printed_row = TableRow{parse_expr("1-u", m), parse_expr("8/(1-u)", m), parse_expr("8", m),
                           parse_expr("(1-u)^2/8", m)};
  e.default_grid = exp_grid();
  return e;
}

ExampleEntry make_reinders() {
  ExampleEntry e;
  e.id = ExampleId::reinders;
  e.name = "reinders";
  e.description = "f = u u'/(8 sqrt3 (u+1)), g = (u+4) u'/(8 sqrt3 (u+1)^2), (u')^2 = 12 u (u+1)(u+4)";
  Model m = Model::elliptic(parse_poly("12*u^3+60*u^2+48*u"));
  // 1/(8 sqrt 3) = sqrt3/24 keeps the coefficients in Q(sqrt 3)
  e.exact = {parse_expr("√3/24*u*y/(u+1)", m), parse_expr("√3/24*(u+4)*y/(u+1)^2", m)};
  e.function_names = {"f", "g"};
  e.values = {shared(q(-1)), shared(q(0)), shared(q(1)), shared(ExactValue::inf())};
  e.curve = mero::CurveParam::from_model(m);
  e.printed_row = TableRow{parse_expr("12*√3/(u+1)", m), parse_expr("12*(u+1)/√3", m), parse_expr("144", m),
                           parse_expr("9/(u+1)^2", m)};
  e.default_grid = nev::geometric_grid(2.0, 12.0, 16);
  return e;
}

ExampleEntry make_triple() {
  ExampleEntry e;
  e.id = ExampleId::steinmetz_triple;
  e.name = "steinmetz_triple";
  Coeff al = mero::triple_alpha();
  e.description = "branches of the cubic in w over u = v, (v')^2 = 4 v (v+1)(v+alpha), alpha = " + al.str();
  e.triple = mero::make_triple(al);
  e.curve = e.triple->u_curve();
  for (int k = 0; k < 3; ++k) {
    e.function_names.push_back("w" + std::to_string(k));
    e.numeric.push_back(std::make_shared<mero::TripleBranch>(e.triple, k));
  }
  e.values = {shared(q(0)), shared(q(1)), shared(ExactValue::inf()), shared(ExactValue::finite(al))};
  e.values[3].numeric.label = "alpha";
  e.pairs = {{0, 1, "0-1"}, {0, 2, "0-2"}, {1, 2, "1-2"}};
  auto bp = e.triple->periods();
  double period = std::min(std::abs(bp[0]), std::abs(bp[1]));
  e.default_grid = nev::geometric_grid(period / 4, 3 * period, 16);

  Coeff cube = al * al * al;
  fail_if(!(cube == Coeff(-1)) || al == Coeff(-1), "alpha is not a third root of -1 other than -1");
  e.verification_log.push_back("alpha = " + al.str() + ": alpha^3 = " + cube.str() + ", alpha != -1");
  exact::Poly p = exact::Poly(4) * exact::Poly::x() * exact::Poly::linear_root(Coeff(-1)) * exact::Poly::linear_root(-al);
  verify_curve(e, p, "(v')^2 = " + p.str("v"));
  return e;
}

}  // namespace

const std::vector<ExampleId>& all_ids() {
  static const std::vector<ExampleId> ids{ExampleId::polya, ExampleId::gundersen, ExampleId::reinders,
                                          ExampleId::steinmetz_triple};
  return ids;
}

std::string id_name(ExampleId id) {
  switch (id) {
    case ExampleId::polya:
      return "polya";
    case ExampleId::gundersen:
      return "gundersen";
    case ExampleId::reinders:
      return "reinders";
    case ExampleId::steinmetz_triple:
      return "steinmetz_triple";
  }
  return "?";
}

std::optional<ExampleId> parse_id(std::string_view s) {
  for (auto id : all_ids())
    if (id_name(id) == s) return id;
  return std::nullopt;
}

std::vector<cplx> sample_points(int n, double h, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> d(-h, h);
  std::vector<cplx> out;
  for (int i = 0; i < n; ++i) {
    double x = d(gen);
    out.push_back({x, d(gen)});
  }
  return out;
}

double ode_residual(const mero::CurveParam& c, const exact::Poly& p, cplx z) {
  mero::Jet u = c.u_jet(z);
  cplx lhs = u.d1 * u.d1;
  return std::abs(lhs - p.eval(u.v)) / std::max(1.0, std::abs(lhs));
}

std::vector<mero::ExtValue> ExampleEntry::ext_values() const {
  std::vector<mero::ExtValue> out;
  for (const auto& v : values) out.push_back(v.numeric);
  return out;
}

std::vector<ExactValue> ExampleEntry::exact_values() const {
  std::vector<ExactValue> out;
  for (const auto& v : values) out.push_back(v.exact);
  return out;
}

std::vector<Coeff> ExampleEntry::finite_values() const {
  std::vector<Coeff> out;
  for (const auto& v : values)
    if (!v.exact.infinite) out.push_back(v.exact.value);
  return out;
}

bool ExampleEntry::infinity_shared() const {
  return std::any_of(values.begin(), values.end(), [](const SharedValue& v) { return v.exact.infinite; });
}

const PairRef& ExampleEntry::pair(const std::string& n) const {
  for (const auto& p : pairs)
    if (p.name == n) return p;
  throw std::out_of_range(name + " has no pair '" + n + "'");
}

TableRow computed_row(const ExampleEntry& e) {
  if (!e.has_exact()) throw std::invalid_argument(e.name + " has no exact forms");
  auto t = exact::phi_pair(e.exact[0], e.exact[1], e.finite_values());
  return {t.phi_f, t.phi_g, exact::mues_psi(e.exact[0], e.exact[1], e.finite_values(), e.infinity_shared()), t.phi};
}

std::map<std::string, Pattern> expected_patterns(ExampleId id) {
  switch (id) {
    case ExampleId::polya:
      return {{"-1", {{1, 1}}}, {"0", {}}, {"1", {{1, 1}}}, {"inf", {}}};
    case ExampleId::gundersen:
      // f: simple zeros and 1-points, double poles and (-1/8)-points
      return {{"1", {{1, 2}}}, {"0", {{1, 2}}}, {"inf", {{2, 1}}}, {"-1/8", {{2, 1}}}};
    case ExampleId::reinders:
      return {{"-1", {{1, 3}, {3, 1}}}, {"0", {{1, 3}, {3, 1}}}, {"1", {{1, 3}, {3, 1}}}, {"inf", {{1, 3}, {3, 1}}}};
    case ExampleId::steinmetz_triple: {
      Pattern p{{1, 1}, {1, 4}, {4, 1}};
      return {{"0", p}, {"1", p}, {"inf", p}, {"alpha", p}};
    }
  }
  throw std::invalid_argument("unknown example id");
}

ExampleEntry build(ExampleId id) {
  ExampleEntry e;
  switch (id) {
    case ExampleId::polya:
      e = make_polya();
      break;
    case ExampleId::gundersen:
      e = make_gundersen();
      break;
    case ExampleId::reinders:
      e = make_reinders();
      break;
    case ExampleId::steinmetz_triple:
      return make_triple();
  }
  for (std::size_t k = 0; k < e.exact.size(); ++k) {
    const std::string nm = e.name + "." + e.function_names[k];
    if (e.curve)
      e.numeric.push_back(std::make_shared<mero::EllipticRat>(e.exact[k], *e.curve, nm));
    else
      e.numeric.push_back(std::make_shared<mero::RationalOfExp>(e.exact[k], nm));
  }
  e.pairs = {{0, 1, "f-g"}};
  verify_agreement(e);
  verify_patterns(e);
  verify_row(e);
  if (e.curve) verify_curve(e, e.exact[0].model().curve(), "(u')^2 = " + e.exact[0].model().curve().str());
  return e;
}

std::vector<TripleCellReport> triple_cell_report(const ExampleEntry& e) {
  if (!e.triple) throw std::invalid_argument(e.name + " is not the triple");
  std::vector<TripleCellReport> out;
  for (const auto& v : e.values) {
    TripleCellReport r;
    r.value = v.numeric.label;
    for (const auto& f : e.numeric) {
      std::vector<int> m;
      for (const auto& p : nev::locate_in_cell(*f, v.numeric).points) m.push_back(p.mult);
      std::sort(m.begin(), m.end());
      r.mults.push_back(m);
    }
    out.push_back(r);
  }
  return out;
}

std::string ExampleEntry::to_json() const {
  using nlohmann::json;
  json j{{"id", name}, {"description", description}};
  j["functions"] = json::array();
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    json f{{"name", function_names[k]}, {"numeric", numeric[k]->describe()}};
    if (k < exact.size()) f["exact"] = exact[k].canonical(), f["readable"] = exact[k].str();
    j["functions"].push_back(f);
  }
  auto pats = expected_patterns(id);
  j["values"] = json::array();
  for (const auto& v : values) {
    json pj = json::array();
    for (const auto& [a, b] : pats.at(v.numeric.label)) pj.push_back({a, b});
    j["values"].push_back({{"label", v.numeric.label}, {"exact", v.exact.str()}, {"patterns", pj}});
  }
  j["pairs"] = json::array();
  for (const auto& p : pairs) j["pairs"].push_back({{"name", p.name}, {"f", p.f}, {"g", p.g}});
  if (printed_row)
    j["table_row"] = {{"Phi_f", printed_row->phi_f.str()},
                      {"Phi_g", printed_row->phi_g.str()},
                      {"Psi", printed_row->psi.str()},
                      {"Phi", printed_row->phi.str()}};
  j["default_grid"] = default_grid;
  j["verification"] = verification_log;
  return j.dump(2);
}

}  // namespace nevlab::catalog
