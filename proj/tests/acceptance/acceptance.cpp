// Acceptance run: one PASS/FAIL line per criterion, followed by the measured numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nevlab/catalog/catalog.hpp"
#include "nevlab/exactfield/identities.hpp"
#include "nevlab/exactfield/parse.hpp"
#include "nevlab/meroeval/lattice.hpp"
#include "nevlab/nevanlinna/profile.hpp"
#include "nevlab/theorems/exact_checks.hpp"
#include "nevlab/theorems/grid_checks.hpp"

using namespace nevlab;
using catalog::ExampleEntry;
using catalog::ExampleId;
using exact::Coeff;
using exact::ExactFunc;
using exact::ExactValue;
using exact::Model;
using exact::Poly;
using mero::cplx;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { lines.push_back("     " + what); }
};

std::string fmt(double x, int digits = 6) {
  char b[64];
  std::snprintf(b, sizeof b, "%.*g", digits, x);
  return b;
}

/// Lazily built entries and profiles shared by several criteria.
struct Fixture {
  std::map<ExampleId, ExampleEntry> entries;
  std::map<std::string, nev::NevProfile> profiles;

  const ExampleEntry& entry(ExampleId id) {
    auto it = entries.find(id);
    if (it == entries.end()) it = entries.emplace(id, catalog::build(id)).first;
    return it->second;
  }

  const nev::NevProfile& profile(ExampleId id, const std::string& pair, bool proximity) {
    std::string key = catalog::id_name(id) + "/" + pair + (proximity ? "/m" : "");
    auto it = profiles.find(key);
    if (it != profiles.end()) return it->second;
    const auto& e = entry(id);
    const auto& p = e.pair(pair);
    nev::ProfileOptions po;
    po.with_proximity = proximity;
    auto& f = e.numeric[static_cast<std::size_t>(p.f)];
    auto& g = e.numeric[static_cast<std::size_t>(p.g)];
    std::string fid = e.name + "." + e.function_names[static_cast<std::size_t>(p.f)];
    std::string gid = e.name + "." + e.function_names[static_cast<std::size_t>(p.g)];
    return profiles.emplace(key, nev::compute_profile(*f, fid, g.get(), gid, e.ext_values(), e.default_grid, po))
        .first->second;
  }
};

ExactFunc ex(const std::string& s, const Model& m) { return exact::parse_expr(s, m); }

// 1. Table reproduction, compared with the cells as printed.
Outcome table(Fixture& fx) {
  Outcome o;
  struct Printed {
    ExampleId id;
    const char *phi_f, *phi_g, *psi, *phi;
  };
  // u = e^z for the first two rows, the elliptic u for the third
  const std::vector<Printed> rows{{ExampleId::polya, "1/u", "u", "1", "1/u^2"},
                                  {ExampleId::gundersen, "1-u", "8/(1-u)", "8", "(1-u)^2/8"},
                                  {ExampleId::reinders, "12*√3/(u+1)", "12*(u+1)/√3", "144", "9/(u+1)^2"}};
  for (const auto& r : rows) {
    const auto& e = fx.entry(r.id);
    const Model& m = e.exact[0].model();
    auto finite = e.finite_values();
    auto psi = exact::mues_psi(e.exact[0], e.exact[1], finite, e.infinity_shared());
    auto ph = exact::phi_pair(e.exact[0], e.exact[1], finite);
    o.expect(psi == ex(r.psi, m), e.name + ": Psi = " + psi.str("u") + " (printed " + r.psi + ")");
    o.expect(ph.phi_f == ex(r.phi_f, m), e.name + ": Phi_f = " + ph.phi_f.str("u") + " (printed " + r.phi_f + ")");
    o.expect(ph.phi_g == ex(r.phi_g, m), e.name + ": Phi_g = " + ph.phi_g.str("u") + " (printed " + r.phi_g + ")");
    o.expect(ph.phi == ex(r.phi, m), e.name + ": Phi = " + ph.phi.str("u") + " (printed " + r.phi + ")");
    if (!(ph.phi == ex(r.phi, m)))
      o.info("Phi_f/Phi_g of the printed cells is " + (ex(r.phi_f, m) / ex(r.phi_g, m)).str("u"));
  }
  return o;
}

// 2. Sharing patterns.
Outcome sharing(Fixture& fx) {
  Outcome o;
  const std::map<ExampleId, catalog::Pattern> want{{ExampleId::gundersen, {{1, 2}, {2, 1}}},
                                                   {ExampleId::reinders, {{1, 3}, {3, 1}}}};
  for (const auto& [id, pat] : want) {
    const auto& e = fx.entry(id);
    for (const auto& v : e.values) {
      auto rep = exact::sharing_report(e.exact[0], e.exact[1], v.exact);
      catalog::Pattern got;
      for (const auto& [k, n] : rep.histogram()) got.insert(k);
      std::string s;
      for (const auto& [a, b] : got) s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      bool within = !got.empty() && std::includes(pat.begin(), pat.end(), got.begin(), got.end());
      o.expect(rep.shared && within && !rep.cm,
               e.name + " value " + v.numeric.label + ": " + s + (rep.cm ? ", CM" : ", not CM"));
    }
  }
  return o;
}

// 3. Triple structure.
Outcome triple(Fixture& fx) {
  Outcome o;
  const auto& e = fx.entry(ExampleId::steinmetz_triple);
  Coeff al = e.triple->alpha_exact();
  o.expect(al * al * al == Coeff(-1) && !(al == Coeff(-1)), "alpha = " + al.str() + ", alpha^3 = -1");
  for (const auto& r : catalog::triple_cell_report(e)) {
    bool ok = r.mults.size() == 3;
    std::string s;
    for (const auto& m : r.mults) {
      ok = ok && m == std::vector<int>{1, 1, 4};
      s += " {";
      for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
      s += "}";
    }
    o.expect(ok, "value " + r.value + ": c-points per period cell, per branch:" + s);
  }
  Poly v = Poly::x(), one = Poly::linear_root(Coeff(-1));
  Poly printed = Poly(4) * v * one * Poly::linear_root(al);
  Poly corrected = Poly(4) * v * one * Poly::linear_root(-al);
  double wp = 0, wc = 0;
  for (cplx z : catalog::sample_points(100, 2.0, 2024)) {
    wp = std::max(wp, catalog::ode_residual(e.triple->u_curve(), printed, z));
    wc = std::max(wc, catalog::ode_residual(e.triple->u_curve(), corrected, z));
  }
  o.expect(wp < 1e-9, "ODE residual as printed, (v')^2 = 4v(v+1)(v-alpha): " + fmt(wp, 3));
  o.info("with v ramified at -alpha, (v')^2 = 4v(v+1)(v+alpha): " + fmt(wc, 3));
  return o;
}

// 4. tau values.
Outcome tau(Fixture& fx) {
  Outcome o;
  for (auto id : {ExampleId::gundersen, ExampleId::reinders}) {
    const auto& e = fx.entry(id);
    const auto& p = fx.profile(id, e.pairs[0].name, id == ExampleId::gundersen);
    for (const auto& s : p.values) {
      double mx = *std::max_element(s.Ns.begin(), s.Ns.end());
      double t = nev::tau_estimate(p, s.value.label);
      o.expect(mx == 0.0 && t == 0.0, e.name + " tau(" + s.value.label + ") = " + fmt(t) + ", max N_s = " + fmt(mx));
    }
  }
  const auto& e = fx.entry(ExampleId::steinmetz_triple);
  for (const auto& pr : e.pairs) {
    const auto& p = fx.profile(ExampleId::steinmetz_triple, pr.name, false);
    std::string s;
    bool ok = true;
    for (const auto& v : p.values) {
      double t = nev::tau_estimate(p, v.value.label);
      ok = ok && t >= 0.28 && t <= 0.40;
      s += " " + v.value.label + ":" + fmt(t, 4);
    }
    o.expect(ok, "triple pair " + pr.name + " (r up to " + fmt(p.r_grid.back(), 4) + "):" + s);
  }
  return o;
}

// 5. Growth.
Outcome growth(Fixture& fx) {
  Outcome o;
  const auto& p = fx.profile(ExampleId::gundersen, "f-g", true);
  double r = p.r_grid.back();
  double q = p.T_f.back() / (2 * r / M_PI);
  o.expect(r == 30.0 && q >= 0.95 && q <= 1.05, "T(30, Gundersen f) / (60/pi) = " + fmt(q));
  const auto& e = fx.entry(ExampleId::polya);
  auto t = nev::characteristic_T(*e.numeric[0], nev::geometric_grid(1.0, 10.0, 4));
  double q2 = t.back() * M_PI / 10;
  o.expect(q2 >= 0.98 && q2 <= 1.02, "T(10, e^z) pi / 10 = " + fmt(q2));
  return o;
}

// 6. Sum of N-bar over the four shared values against T.
Outcome five_value(Fixture& fx) {
  Outcome o;
  const auto& p = fx.profile(ExampleId::gundersen, "f-g", true);
  double sum = 0;
  for (const auto& s : p.values) sum += s.Nbar_f.back();
  double q = sum / p.T.back();
  o.expect(q >= 1.9 && q <= 2.1, "sum N-bar(30, a) / T(30) = " + fmt(q));
  o.info("sum N-bar = " + fmt(sum) + ", T_f = " + fmt(p.T_f.back()) + ", T_g = " + fmt(p.T_g.back()));
  // the a-points are the solutions of e^z = c for c = 3, -1, 1, -3 (values 1, 0, inf, -1/8)
  double oracle = 0;
  for (cplx c : {cplx(3), cplx(-1), cplx(1), cplx(-3)})
    for (int k = -10; k <= 10; ++k) {
      double a = std::abs(std::log(c) + cplx(0, 2 * M_PI * k));
      oracle += a < 1e-12 ? std::log(30.0) : std::max(0.0, std::log(30.0 / a));
    }
  o.info("independent sum of log(30/|z|) over the a-points: " + fmt(oracle) + "; its ratio to T(30): " +
         fmt(oracle / p.T.back()));
  return o;
}

// 7. Deficiencies.
Outcome deficiencies(Fixture& fx) {
  Outcome o;
  const auto& p = fx.profile(ExampleId::gundersen, "f-g", true);
  auto delta = [&](const std::string& label, bool of_f) {
    const auto& s = p.series(label);
    return std::clamp(nev::top_half_min_ratio(of_f ? s.m_f : s.m_g, of_f ? p.T_f : p.T_g, 0.0), 0.0, 1.0);
  };
  for (auto [label, of_f] : std::vector<std::pair<std::string, bool>>{{"0", true}, {"1", true}, {"inf", false}, {"-1/8", false}}) {
    double d = delta(label, of_f);
    const auto& s = p.series(label);
    double at30 = (of_f ? s.m_f : s.m_g).back() / (of_f ? p.T_f : p.T_g).back();
    o.expect(d >= 0.45 && d <= 0.55,
             std::string("delta(") + label + (of_f ? ", f) = " : ", g) = ") + fmt(d) + "  (m/T at r = 30: " + fmt(at30) + ")");
  }
  return o;
}

// 8. Bound constants.
Outcome constants() {
  Outcome o;
  auto m = thm::minimize_defekt();
  o.expect(m.ell == 9 && m.value == mpq_class(209, 5), "minimum at l = " + std::to_string(m.ell) + ": " + m.value.get_str());
  o.expect(thm::defekt_factor(5) == 77, "l = 5: " + thm::defekt_factor(5).get_str());
  bool shape = true;
  for (int l = 5; l < 20; ++l) {
    bool down = thm::defekt_factor(l + 1) < thm::defekt_factor(l);
    shape = shape && (l < 9 ? down : !down && thm::defekt_factor(l + 1) != thm::defekt_factor(l));
  }
  o.expect(shape, "strictly decreasing on 5..9, strictly increasing on 9..20");
  return o;
}

// 9. Dichotomy and the Key Lemma inequalities.
Outcome dichotomy(Fixture& fx) {
  Outcome o;
  for (auto id : {ExampleId::polya, ExampleId::gundersen, ExampleId::reinders}) {
    const auto& e = fx.entry(id);
    auto r = thm::check_four_value_conclusion(e.exact[0], e.exact[1], e.exact_values());
    bool want = id == ExampleId::polya;
    o.expect((r.status == thm::Status::holds) == want && r.status != thm::Status::inconclusive,
             e.name + ": four-value conclusion " + thm::status_name(r.status));
  }
  auto key_lemma = [&](ExampleId id, const std::string& pair, bool proximity) {
    const auto& e = fx.entry(id);
    const auto& pr = e.pair(pair);
    auto four = e.has_exact() ? thm::check_four_value_conclusion(e.exact[0], e.exact[1], e.exact_values())
                              : thm::check_four_value_conclusion(*e.numeric[static_cast<std::size_t>(pr.f)],
                                                                 *e.numeric[static_cast<std::size_t>(pr.g)],
                                                                 e.ext_values());
    o.expect(four.status == thm::Status::fails, e.name + " " + pair + ": four-value conclusion " +
                                                     thm::status_name(four.status));
    for (const auto& r : thm::check_key_lemma(fx.profile(id, pair, proximity), false))
      o.expect(r.status == thm::Status::holds, e.name + " " + pair + ": " + r.summary());
  };
  key_lemma(ExampleId::gundersen, "f-g", true);
  key_lemma(ExampleId::reinders, "f-g", false);
  for (const auto& pr : fx.entry(ExampleId::steinmetz_triple).pairs) key_lemma(ExampleId::steinmetz_triple, pr.name, false);
  return o;
}

Coeff random_coeff(std::mt19937& rng, bool quadratic) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  mpq_class a(num(rng), den(rng)), b(0);
  a.canonicalize();
  if (quadratic) {
    b = mpq_class(num(rng), den(rng));
    b.canonicalize();
  }
  return Coeff(a, b, quadratic ? 3 : 2);
}

Poly random_poly(std::mt19937& rng, int maxdeg, bool quadratic) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  std::vector<Coeff> c;
  int n = deg(rng);
  for (int i = 0; i <= n; ++i) c.push_back(random_coeff(rng, quadratic));
  if (c.back().is_zero()) c.back() = Coeff(1);
  return Poly(c);
}

ExactFunc random_func(std::mt19937& rng, const Model& m) {
  bool q = m.is_elliptic();
  Poly den;
  while (den.is_zero()) den = random_poly(rng, 2, q);
  return ExactFunc(m, random_poly(rng, 3, q), q ? random_poly(rng, 2, q) : Poly(), den);
}

// 10. Property suites.
Outcome properties(Fixture& fx) {
  Outcome o;
  {
    const auto& p = fx.profile(ExampleId::gundersen, "f-g", true);
    bool ok = true;
    double widest = 0;
    for (const auto& s : p.values) {
      double la = s.value.inf ? 0.0 : std::max(0.0, std::log(std::abs(s.value.a)));
      double allowed = 2 * (la + std::log(2.0)) + 0.5 * std::log(2.0);
      for (bool of_f : {true, false}) {
        const auto& T = of_f ? p.T_f : p.T_g;
        const auto& m = of_f ? s.m_f : s.m_g;
        const auto& N = of_f ? s.N_f : s.N_g;
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t i = 0; i < T.size(); ++i) {
          double d = T[i] - m[i] - N[i];
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
        widest = std::max(widest, (hi - lo) / allowed);
        ok = ok && hi - lo <= allowed;
      }
    }
    o.expect(ok, "first main theorem: T - m - N stays in its band (widest band / allowed = " + fmt(widest, 3) + ")");
  }
  {
    std::size_t bad = 0;
    double gap = 0;
    for (const auto& [k, p] : fx.profiles) {
      bad += p.invariant_violations().size();
      gap = std::max(gap, p.worst_integrality_gap);
    }
    o.expect(bad == 0, "monotonicity and N_s <= N-bar <= N on " + std::to_string(fx.profiles.size()) +
                           " profiles: " + std::to_string(bad) + " violations");
    o.expect(gap <= 0.1, "argument principle integrality: worst gap " + fmt(gap, 3));
  }
  {
    std::mt19937 rng(20240915);
    Model rm = fx.entry(ExampleId::reinders).exact[0].model();
    int ok = 0;
    for (int i = 0; i < 200; ++i) {
      const Model& m = i % 2 ? rm : Model::exp();
      ExactFunc f = random_func(rng, m), g = random_func(rng, m);
      if ((f * g).derive() == f.derive() * g + f * g.derive()) ++ok;
    }
    o.expect(ok == 200, "Leibniz rule on 200 random pairs (rational in e^z and on the curve): " + std::to_string(ok));
  }
  {
    std::array<cplx, 3> roots{cplx(0.3, 1.1), cplx(-0.9, -0.2), cplx(0.6, -0.9)};
    auto lat = mero::lattice_from_cubic(roots);
    double worst = 0;
    for (cplx z : catalog::sample_points(100, 3.0, 99)) {
      auto w = lat.wp(z);
      if (w.pole) continue;
      cplx rhs = 4.0 * (w.p - roots[0]) * (w.p - roots[1]) * (w.p - roots[2]);
      worst = std::max(worst, std::abs(w.dp * w.dp - rhs) / std::max(1.0, std::abs(rhs)));
    }
    o.expect(worst < 1e-9, "wp differential equation residual at 100 points: " + fmt(worst, 3));
  }
  return o;
}

}  // namespace

int main() {
  Fixture fx;
  struct Criterion {
    const char* name;
    double budget_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"exact table reproduction", 1, [&] { return table(fx); }},
      {"sharing patterns", 1, [&] { return sharing(fx); }},
      {"triple structure", 60, [&] { return triple(fx); }},
      {"tau values", 0, [&] { return tau(fx); }},
      {"growth asymptotics", 120, [&] { return growth(fx); }},
      {"five-value condition N_b", 0, [&] { return five_value(fx); }},
      {"deficiencies", 0, [&] { return deficiencies(fx); }},
      {"bound constants", 0, [] { return constants(); }},
      {"dichotomy and Key Lemma", 0, [&] { return dichotomy(fx); }},
      {"property suites", 0, [&] { return properties(fx); }},
  };
  // warm the catalog outside the timed sections: construction runs the self-checks
  for (auto id : catalog::all_ids()) fx.entry(id);

  int failed = 0;
  std::ostringstream detail;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) o.expect(secs < c.budget_s, "runtime " + fmt(secs, 3) + " s (bound " + fmt(c.budget_s) + " s)");
    failed += !o.pass;
    std::printf("%s %2zu %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, secs);
    std::fflush(stdout);
    detail << "[" << i + 1 << "] " << c.name << '\n';
    for (const auto& l : o.lines) detail << "  " << l << '\n';
  }
  std::printf("\n%s", detail.str().c_str());
  std::printf("\n%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
