#include "nevlab/theorems/grid_checks.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "nevlab/exactfield/identities.hpp"

namespace nevlab::thm {

namespace {

using Series = std::vector<double>;

void require_len(const std::string& what, const Series& s, std::size_t n) {
  if (s.size() != n) throw MissingSeries("profile lacks series " + what);
}

Series add(Series a, const Series& b, double k = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

Series scaled(Series a, double k) {
  for (double& x : a) x *= k;
  return a;
}

void require_distinct_pair(const NevProfile& p) {
  if (!p.is_pair()) throw PreconditionError("a pair profile is required");
  if (p.f_id == p.g_id) throw PreconditionError("f and g must be distinct functions");
  if (p.values.size() != 4) throw PreconditionError("four shared values expected");
}

/// Cross-ratio of the tracked values in profile order equals -1 (exact when possible).
bool profile_harmonic(const NevProfile& p) {
  std::vector<ExactValue> ex;
  for (const auto& s : p.values) {
    if (s.value.inf)
      ex.push_back(ExactValue::inf());
    else if (s.value.exact)
      ex.push_back(ExactValue::finite(*s.value.exact));
  }
  if (ex.size() == 4) return is_harmonic(ex);
  auto diff = [&](int i, int j) -> mero::cplx {
    const auto &x = p.values[i].value, &y = p.values[j].value;
    return (x.inf || y.inf) ? 1.0 : x.a - y.a;
  };
  mero::cplx cr = diff(0, 2) * diff(1, 3) / (diff(0, 3) * diff(1, 2));
  return std::abs(cr + 1.0) < 1e-12;
}

const nev::ValueSeries* infinity_series(const NevProfile& p) {
  for (const auto& s : p.values)
    if (s.value.inf) return &s;
  return nullptr;
}

CheckResult not_supplied(const std::string& name, const std::string& what) {
  CheckResult c;
  c.name = name;
  c.status = Status::inconclusive;
  c.note = what + " not supplied";
  return c;
}

}  // namespace

std::vector<CheckResult> check_five_value_conditions(const NevProfile& p, const FiveValueExtras& x) {
  require_distinct_pair(p);
  const std::size_t n = p.r_grid.size();
  require_len("T_f", p.T_f, n);
  require_len("T_g", p.T_g, n);
  require_len("T", p.T, n);
  for (const auto& s : p.values) require_len("Nbar_f[" + s.value.label + "]", s.Nbar_f, n);
  const Series& r = p.r_grid;
  const Series twoT = scaled(p.T, 2.0);

  std::vector<CheckResult> out;
  out.push_back(merge_family("N_a", {grid_check("T(r,f) = T(r)", Relation::eq, r, p.T_f, p.T),
                                     grid_check("T(r,g) = T(r)", Relation::eq, r, p.T_g, p.T)}));

  Series sum(n, 0.0);
  for (const auto& s : p.values) sum = add(sum, s.Nbar_f);
  out.push_back(grid_check("N_b", Relation::eq, r, sum, twoT));

  if (x.nbar_diff) {
    require_len("Nbar(f-g)", *x.nbar_diff, n);
    Series lhs = *x.nbar_diff;
    if (const auto* inf = infinity_series(p)) lhs = add(lhs, inf->Nbar_f);
    auto c = grid_check("N_c", Relation::eq, r, lhs, twoT);
    if (infinity_series(p)) c.note = "infinity among the shared values: N-bar(r,inf) added";
    out.push_back(c);
  } else {
    out.push_back(not_supplied("N_c", "N-bar(r, 1/(f-g))"));
  }

  if (x.b && x.nbar_f_b && x.nbar_g_b) {
    for (const auto& s : p.values)
      if (s.value.inf == x.b->inf && (s.value.inf || std::abs(s.value.a - x.b->a) < 1e-12))
        throw PreconditionError("the test value b must differ from the shared values");
    require_len("Nbar(f-b)", *x.nbar_f_b, n);
    require_len("Nbar(g-b)", *x.nbar_g_b, n);
    auto c = merge_family("N_d", {grid_check("N-bar(r,1/(f-b)) = T(r)", Relation::eq, r, *x.nbar_f_b, p.T),
                                  grid_check("N-bar(r,1/(g-b)) = T(r)", Relation::eq, r, *x.nbar_g_b, p.T)});
    c.note = "b = " + x.b->label + "; " + c.note;
    out.push_back(c);
  } else {
    out.push_back(not_supplied("N_d", "test value b"));
  }
  return out;
}

std::vector<CheckResult> check_key_lemma(const NevProfile& p, bool four_value_conclusion) {
  require_distinct_pair(p);
  if (four_value_conclusion)
    throw PreconditionError("the pair satisfies the Four-Value conclusion; the inequalities are not asserted");
  const std::size_t n = p.r_grid.size();
  std::vector<const Series*> Ns, Nb;
  std::vector<std::string> lab;
  for (const auto& s : p.values) {
    require_len("Ns[" + s.value.label + "]", s.Ns, n);
    require_len("Nbar_f[" + s.value.label + "]", s.Nbar_f, n);
    Ns.push_back(&s.Ns);
    Nb.push_back(&s.Nbar_f);
    lab.push_back(s.value.label);
  }
  const Series& r = p.r_grid;
  const Series zero(n, 0.0);
  // sums over the index set {mu : mu not in skip}
  auto sum_except = [&](const std::vector<const Series*>& v, std::initializer_list<int> skip) {
    Series s = zero;
    for (int m = 0; m < 4; ++m)
      if (std::find(skip.begin(), skip.end(), m) == skip.end()) s = add(s, *v[m]);
    return s;
  };
  auto tag = [&](std::initializer_list<int> idx) {
    std::string t = "(";
    for (int i : idx) t += (t.size() > 1 ? "," : "") + lab[i];
    return t + ")";
  };

  const double ka = profile_harmonic(p) ? 2.0 : 1.5;
  std::vector<CheckResult> ra, rb, rc, rd, re;
  for (int k = 0; k < 4; ++k)
    for (int v = 0; v < 4; ++v) {
      if (k == v) continue;
      ra.push_back(grid_check("R_a" + tag({k, v}), Relation::le, r, add(scaled(*Ns[k], ka), *Ns[v]),
                              add(*Nb[k], *Nb[v])));
      rb.push_back(grid_check("R_b" + tag({k, v}), Relation::le, r, add(sum_except(Ns, {v}), *Ns[k]),
                              sum_except(Nb, {v})));
      if (k < v)
        rd.push_back(grid_check("R_d" + tag({k, v}), Relation::le, r,
                                add(sum_except(Ns, {}), sum_except(Ns, {k, v})), scaled(sum_except(Nb, {k, v}), 2.0)));
    }
  for (int k = 0; k < 4; ++k) {
    rc.push_back(grid_check("R_c" + tag({k}), Relation::le, r, add(sum_except(Ns, {k}), *Nb[k]), sum_except(Nb, {k})));
    re.push_back(grid_check("R_e" + tag({k}), Relation::le, r, scaled(sum_except(Ns, {k}), 4.0),
                            scaled(sum_except(Nb, {k}), 3.0)));
  }
  std::vector<CheckResult> out;
  out.push_back(merge_family("R_a", ra));
  out.back().note += ka == 2.0 ? "; factor 2 (harmonic values)" : "; factor 3/2";
  out.push_back(merge_family("R_b", rb));
  out.push_back(merge_family("R_c", rc));
  out.push_back(merge_family("R_d", rd));
  out.push_back(merge_family("R_e", re));
  out.push_back(grid_check("R_f", Relation::le, r, scaled(sum_except(Ns, {}), 3.0), scaled(sum_except(Nb, {}), 2.0)));
  return out;
}

CheckResult check_phi_growth_bound(const NevProfile& p, const ExactFunc& phi, bool cm_value,
                                   const mero::CurveParam* curve) {
  require_distinct_pair(p);
  CheckResult out;
  out.name = "Phi growth bound";
  if (!cm_value) {
    out.status = Status::inconclusive;
    out.note = "inapplicable: no value is shared by counting multiplicities";
    return out;
  }
  if (phi.is_constant()) {
    out.status = Status::holds;
    out.note = "Phi constant: CM-all conclusion";
    out.witness.push_back("Phi = " + phi.constant_value().str());
    return out;
  }
  const auto* inf = infinity_series(p);
  if (!inf) throw MissingSeries("profile lacks the series of the value infinity");
  std::unique_ptr<mero::MeroFunc> num;
  if (phi.model().is_elliptic()) {
    if (!curve) throw std::invalid_argument("elliptic Phi needs its curve parametrisation");
    num = std::make_unique<mero::EllipticRat>(phi, *curve, "Phi");
  } else {
    num = std::make_unique<mero::RationalOfExp>(phi, "Phi");
  }
  const std::size_t n = p.r_grid.size();
  require_len("T", p.T, n);
  require_len("Nbar_f[inf]", inf->Nbar_f, n);
  Series tphi = nev::characteristic_T(*num, p.r_grid);
  auto lower = grid_check("(5/209) T(r) <= T(r,Phi)", Relation::le, p.r_grid, scaled(p.T, 5.0 / 209.0), tphi);
  auto upper = grid_check("T(r,Phi) <= 2T(r) - 2 N-bar(r,inf)", Relation::le, p.r_grid, tphi,
                          add(scaled(p.T, 2.0), inf->Nbar_f, -2.0));
  out = merge_family("Phi growth bound", {lower, upper});
  out.witness.push_back("Phi = " + phi.str());
  return out;
}

CheckResult check_psi_constancy_under_bounded_sharp(const mero::MeroFunc& f, const mero::MeroFunc& g,
                                                    const ExactFunc& fe, const ExactFunc& ge,
                                                    const std::vector<ExactValue>& values, const SharpOptions& opt) {
  if (f.is_constant() || g.is_constant() || fe.is_constant() || ge.is_constant())
    throw PreconditionError("non-constant functions required");
  if (opt.points < 3 || !(opt.half_width > 0)) throw std::invalid_argument("bad sampling options");
  double sup_all = 0.0, sup_inner = 0.0;
  const double h = opt.half_width, step = 2 * h / (opt.points - 1);
  for (int i = 0; i < opt.points; ++i)
    for (int j = 0; j < opt.points; ++j) {
      // small irrational offset keeps samples off lattices of poles
      mero::cplx z(-h + i * step + 1e-3 * M_SQRT2, -h + j * step + 1e-3 * M_PI);
      double s = mero::spherical_derivative(f, z) + mero::spherical_derivative(g, z);
      sup_all = std::max(sup_all, s);
      if (std::abs(z.real()) <= h / 2 && std::abs(z.imag()) <= h / 2) sup_inner = std::max(sup_inner, s);
    }
  bool bounded = sup_all <= 1.5 * sup_inner + 1e-9;

  std::vector<Coeff> finite;
  bool inf_shared = false;
  for (const auto& v : values) {
    if (v.infinite)
      inf_shared = true;
    else
      finite.push_back(v.value);
  }
  ExactFunc psi = exact::mues_psi(fe, ge, finite, inf_shared);
  CheckResult out;
  out.name = "Psi constant under bounded f#, g#";
  std::ostringstream os;
  os << "sup (f# + g#) on [-" << h << "," << h << "]^2 = " << sup_all << ", on the half square = " << sup_inner;
  out.witness.push_back(os.str());
  out.witness.push_back("Psi = " + psi.str());
  if (bounded)
    out.status = psi.is_constant() ? Status::holds : Status::fails;
  else
    out.status = Status::inconclusive, out.note = "no evidence that f# + g# is bounded";
  return out;
}

}  // namespace nevlab::thm
