#include "nevlab/cli/commands.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "nevlab/exactfield/identities.hpp"
#include "nevlab/exactfield/parse.hpp"
#include "nevlab/nevanlinna/profile.hpp"
#include "nevlab/theorems/grid_checks.hpp"

namespace nevlab::cli {

namespace {

using catalog::ExampleEntry;
using exact::ExactFunc;
using exact::ExactValue;
using mero::ExtValue;
using nev::format_double;
using thm::CheckResult;
using thm::Status;

/// One function or pair together with its shared values.
struct Subject {
  std::shared_ptr<const ExampleEntry> entry;  // keeps curve and triple alive
  std::string f_id, g_id;
  mero::MeroPtr f, g;
  std::optional<ExactFunc> fe, ge;
  const mero::CurveParam* curve = nullptr;
  std::vector<ExtValue> values;
  std::vector<ExactValue> exact_values;
  std::vector<double> default_grid;

  bool is_pair() const { return g != nullptr; }
};

ExampleEntry load(const std::string& id) {
  auto e = catalog::parse_id(id);
  if (!e) throw UsageError("unknown example id '" + id + "' (see: nevlab catalog list)");
  return catalog::build(*e);
}

std::vector<ExactValue> parse_values(const std::string& text) {
  std::vector<ExactValue> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item.empty()) continue;
    if (item == "inf" || item == "infinity") {
      out.push_back(ExactValue::inf());
      continue;
    }
    ExactFunc c = exact::parse_expr(item, exact::Model::exp());
    if (!c.is_constant()) throw UsageError("value '" + item + "' is not a constant");
    out.push_back(ExactValue::finite(c.constant_value()));
  }
  if (out.empty()) throw UsageError("--values is empty");
  return out;
}

std::vector<Subject> subjects(const RunConfig& c) {
  std::vector<Subject> out;
  if (!c.f_expr.empty()) {
    if (c.values.empty()) throw UsageError("--values is required with --f");
    Subject s;
    try {
      s.fe = exact::parse_expr(c.f_expr, exact::Model::exp());
      if (!c.g_expr.empty()) s.ge = exact::parse_expr(c.g_expr, exact::Model::exp());
    } catch (const exact::ParseError& e) {
      throw UsageError(std::string("cannot parse expression: ") + e.what());
    }
    s.f_id = c.f_expr;
    s.f = std::make_shared<mero::RationalOfExp>(*s.fe, c.f_expr);
    if (s.ge) {
      s.g_id = c.g_expr;
      s.g = std::make_shared<mero::RationalOfExp>(*s.ge, c.g_expr);
    }
    s.exact_values = parse_values(c.values);
    for (const auto& v : s.exact_values) s.values.push_back(ExtValue::from_exact(v));
    s.default_grid = nev::geometric_grid(2.0, 30.0, 16);
    out.push_back(s);
    return out;
  }
  if (c.example.empty()) throw UsageError("an example id or --f is required");
  auto e = std::make_shared<const ExampleEntry>(load(c.example));
  for (const auto& p : e->pairs) {
    if (!c.pair.empty() && c.pair != p.name) continue;
    Subject s;
    s.entry = e;
    s.f_id = e->name + "." + e->function_names[static_cast<std::size_t>(p.f)];
    s.g_id = e->name + "." + e->function_names[static_cast<std::size_t>(p.g)];
    s.f = e->numeric[static_cast<std::size_t>(p.f)];
    s.g = e->numeric[static_cast<std::size_t>(p.g)];
    if (e->has_exact()) {
      s.fe = e->exact[static_cast<std::size_t>(p.f)];
      s.ge = e->exact[static_cast<std::size_t>(p.g)];
    }
    s.curve = e->curve ? &*e->curve : nullptr;
    s.values = e->ext_values();
    s.exact_values = e->exact_values();
    s.default_grid = e->default_grid;
    out.push_back(s);
  }
  if (out.empty()) throw UsageError("no pair '" + c.pair + "' in " + e->name);
  return out;
}

nev::ProfileOptions profile_options(const RunConfig& c, bool with_proximity) {
  nev::ProfileOptions po;
  po.locate.cluster_diameter = c.tol_root;
  po.proximity_tol = c.tol_quad;
  po.with_proximity = with_proximity;
  return po;
}

nev::NevProfile profile_of(const Subject& s, const std::vector<double>& grid, const RunConfig& c, bool with_m) {
  return nev::compute_profile(*s.f, s.f_id, s.g.get(), s.g_id, s.values, grid, profile_options(c, with_m));
}

mero::MeroPtr numeric_form(const ExactFunc& h, const mero::CurveParam* curve, const std::string& name) {
  if (h.model().is_elliptic()) {
    if (!curve) throw std::invalid_argument("elliptic form without a curve");
    return std::make_shared<mero::EllipticRat>(h, *curve, name);
  }
  return std::make_shared<mero::RationalOfExp>(h, name);
}

std::string text_summary(const nev::NevProfile& p) {
  std::ostringstream os;
  os << "profile " << p.f_id << (p.is_pair() ? " / " + p.g_id : "") << " on " << p.r_grid.size() << " radii\n";
  os << std::setw(12) << "r" << std::setw(14) << "T_f";
  if (p.is_pair()) os << std::setw(14) << "T_g";
  os << '\n';
  for (std::size_t i = 0; i < p.r_grid.size(); ++i) {
    os << std::setw(12) << p.r_grid[i] << std::setw(14) << p.T_f[i];
    if (p.is_pair()) os << std::setw(14) << p.T_g[i];
    os << '\n';
  }
  os << "at r = " << p.r_grid.back() << ":\n";
  for (const auto& s : p.values) {
    os << "  " << std::setw(6) << s.value.label << "  m_f " << s.m_f.back() << "  N_f " << s.N_f.back() << "  Nbar_f "
       << s.Nbar_f.back();
    if (p.is_pair())
      os << "  m_g " << s.m_g.back() << "  N_g " << s.N_g.back() << "  Nbar_g " << s.Nbar_g.back() << "  N_s "
         << s.Ns.back() << "  tau " << nev::tau_estimate(p, s.value.label);
    os << '\n';
  }
  auto bad = p.invariant_violations();
  os << "invariant violations: " << bad.size() << '\n';
  for (const auto& b : bad) os << "  " << b << '\n';
  return os.str();
}

std::string render(const ExactFunc& h) { return h.str("u"); }

std::string u_meaning(const ExampleEntry& e) {
  return e.curve ? "u = Weierstrass-type solution of the curve ODE" : "u = e^z";
}

int exit_for(Status s) { return s == Status::holds ? kOk : s == Status::fails ? kFailed : kInconclusive; }

CheckResult inapplicable(const std::string& name, const std::string& why) {
  CheckResult r;
  r.name = name;
  r.status = Status::inconclusive;
  r.note = "inapplicable: " + why;
  return r;
}

CheckResult four_value(const Subject& s) {
  if (s.fe && s.ge) return thm::check_four_value_conclusion(*s.fe, *s.ge, s.exact_values);
  return thm::check_four_value_conclusion(*s.f, *s.g, s.values);
}

std::vector<CheckResult> run_check(const Subject& s, const std::string& which, const RunConfig& c) {
  if (!s.is_pair()) throw thm::PreconditionError("checks need a pair (give --g)");
  std::vector<CheckResult> out;
  auto tag = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) r.name = s.f_id + " / " + s.g_id + ": " + r.name;
    return rs;
  };
  if (which == "four") return tag({four_value(s)});
  if (which == "psisharp") {
    if (!s.fe || !s.ge) throw thm::PreconditionError("Psi needs exact forms");
    return tag({thm::check_psi_constancy_under_bounded_sharp(*s.f, *s.g, *s.fe, *s.ge, s.exact_values)});
  }
  const auto grid = c.grid(s.default_grid);
  if (which == "keylemma") {
    bool fv = four_value(s).status == Status::holds;
    if (fv) throw thm::PreconditionError("the pair satisfies the Four-Value conclusion");
    auto p = profile_of(s, grid, c, false);
    auto rs = thm::check_key_lemma(p, fv);
    // tau next to the inequalities: the corollary cases read off from both
    for (const auto& v : p.values)
      rs.back().witness.push_back("tau(" + v.value.label + ") = " + format_double(nev::tau_estimate(p, v.value.label)));
    return tag(rs);
  }
  if (which == "five") {
    auto p = profile_of(s, grid, c, false);
    thm::FiveValueExtras x;
    for (double b : {2.0, 3.0, 5.0, -3.0}) {
      bool used = false;
      for (const auto& v : s.values) used = used || (!v.inf && v.a == mero::cplx(b));
      if (used) continue;
      x.b = ExtValue::finite(b);
      break;
    }
    auto po = profile_options(c, false);
    x.nbar_f_b = nev::counting_N(*s.f, *x.b, grid, po.locate).Nbar;
    x.nbar_g_b = nev::counting_N(*s.g, *x.b, grid, po.locate).Nbar;
    if (s.fe && s.ge) {
      auto diff = numeric_form(*s.fe - *s.ge, s.curve, "f-g");
      x.nbar_diff = nev::counting_N(*diff, ExtValue::finite(0.0, "0"), grid, po.locate).Nbar;
    }
    return tag(thm::check_five_value_conditions(p, x));
  }
  if (which == "phibound") {
    if (!s.fe || !s.ge) return tag({inapplicable("Phi growth bound", "Phi needs exact forms")});
    bool inf = false, cm = false;
    std::vector<exact::Coeff> finite;
    for (const auto& v : s.exact_values) {
      if (v.infinite)
        inf = true;
      else
        finite.push_back(v.value);
      cm = cm || exact::sharing_report(*s.fe, *s.ge, v).cm;
    }
    if (!inf || finite.size() != 3)
      return tag({inapplicable("Phi growth bound", "infinity must be one of four shared values")});
    auto phi = exact::phi_pair(*s.fe, *s.ge, finite).phi;
    if (!cm) return tag({inapplicable("Phi growth bound", "no value is shared by counting multiplicities")});
    return tag({thm::check_phi_growth_bound(profile_of(s, grid, c, false), phi, cm, s.curve)});
  }
  throw UsageError("unknown check '" + which + "' (five, four, keylemma, phibound, psisharp)");
}

}  // namespace

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  ExampleEntry e;
  try {
    e = load(c.example);
  } catch (const catalog::CatalogError& x) {
    err << "verification failed: " << x.what() << '\n';
    return kFailed;
  }
  bool ok = true;
  out << "example " << e.name << ": " << e.description << '\n';
  for (const auto& l : e.verification_log) out << "  " << l << '\n';
  if (e.has_exact()) {
    auto pats = catalog::expected_patterns(e.id);
    for (const auto& v : e.values) {
      auto rep = exact::sharing_report(e.exact[0], e.exact[1], v.exact);
      catalog::Pattern got;
      for (const auto& [k, n] : rep.histogram()) got.insert(k);
      bool good = rep.shared && got == pats.at(v.numeric.label);
      ok = ok && good;
      out << "  value " << v.numeric.label << ": " << (good ? "pattern as expected" : "PATTERN MISMATCH")
          << (rep.cm ? ", CM" : ", not CM") << '\n';
    }
    auto row = catalog::computed_row(e);
    const auto& pr = *e.printed_row;
    out << "  (" << u_meaning(e) << ")\n";
    bool psi_ok = row.psi == pr.psi, pf_ok = row.phi_f == pr.phi_f, pg_ok = row.phi_g == pr.phi_g;
    bool phi_def = row.phi == row.phi_f / row.phi_g;
    ok = ok && psi_ok && pf_ok && pg_ok && phi_def;
    out << "  Ψ = " << render(row.psi) << (psi_ok ? "" : "  (table: " + render(pr.psi) + ")") << '\n';
    out << "  Φ_f = " << render(row.phi_f) << (pf_ok ? "" : "  (table: " + render(pr.phi_f) + ")") << '\n';
    out << "  Φ_g = " << render(row.phi_g) << (pg_ok ? "" : "  (table: " + render(pr.phi_g) + ")") << '\n';
    out << "  Φ = Φ_f/Φ_g = " << render(row.phi);
    if (!(row.phi == pr.phi)) out << "  (note: table prints " << render(pr.phi) << ")";
    out << '\n';
    // auxiliary functions, reported for information
    for (auto preset : {exact::AuxPreset::Phi40, exact::AuxPreset::Phi31}) {
      try {
        auto vals = preset == exact::AuxPreset::Phi31 ? e.finite_values() : std::vector<exact::Coeff>{};
        auto v = exact::aux_identity(preset, e.exact[0], e.exact[1], vals);
        out << "  aux " << exact::aux_preset_name(preset) << ": " << v.str() << '\n';
      } catch (const std::exception& x) {
        out << "  aux " << exact::aux_preset_name(preset) << ": not applicable (" << x.what() << ")\n";
      }
    }
  } else {
    for (const auto& r : catalog::triple_cell_report(e)) {
      out << "  value " << r.value << ": multiplicities per branch cell";
      for (const auto& m : r.mults) {
        out << " {";
        for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "," : "") << m[i];
        out << "}";
        ok = ok && m == std::vector<int>{1, 1, 4};
      }
      out << '\n';
    }
  }
  out << (ok ? "all verifications hold" : "VERIFICATION FAILED") << '\n';
  return ok ? kOk : kFailed;
}

int cmd_table(const std::vector<ExampleEntry>& entries, const RunConfig& c, std::ostream& out, std::ostream&) {
  nlohmann::json js = nlohmann::json::array();
  std::ostringstream os;
  os << "functions | Phi_f | Phi_g | Psi | Phi   (u = e^z, or the elliptic u for curve examples)\n";
  for (const auto& e : entries) {
    if (!e.has_exact()) continue;
    auto row = catalog::computed_row(e);
    os << e.name << " | " << render(row.phi_f) << " | " << render(row.phi_g) << " | " << render(row.psi) << " | "
       << render(row.phi);
    std::vector<std::string> diffs;
    if (e.printed_row) {
      const auto& p = *e.printed_row;
      if (!(p.phi_f == row.phi_f)) diffs.push_back("Phi_f " + render(p.phi_f));
      if (!(p.phi_g == row.phi_g)) diffs.push_back("Phi_g " + render(p.phi_g));
      if (!(p.psi == row.psi)) diffs.push_back("Psi " + render(p.psi));
      if (!(p.phi == row.phi)) diffs.push_back("Phi " + render(p.phi));
    }
    for (std::size_t i = 0; i < diffs.size(); ++i) os << (i ? ", " : "   [printed: ") << diffs[i];
    if (!diffs.empty()) os << "]";
    os << '\n';
    js.push_back({{"functions", e.name},
                  {"Phi_f", render(row.phi_f)},
                  {"Phi_g", render(row.phi_g)},
                  {"Psi", render(row.psi)},
                  {"Phi", render(row.phi)},
                  {"printed_differs", diffs}});
  }
  std::string text = c.format == "json" ? js.dump(2) + "\n" : os.str();
  if (!c.out.empty()) write_atomic(c.out, text);
  out << text;
  return kOk;
}

int cmd_profile(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto ss = subjects(c);
  const Subject& s = ss.front();
  if (ss.size() > 1) err << "note: profiling pair " << s.f_id << " / " << s.g_id << " (use --pair to choose)\n";
  auto grid = c.grid(s.default_grid);
  nev::NevProfile p;
  try {
    p = profile_of(s, grid, c, true);
  } catch (const nev::NumericalError& x) {
    err << "numerical non-convergence in " << x.functional() << ": " << x.what() << '\n';
    return kNumerical;
  }
  if (!c.out.empty()) {
    write_atomic(c.out + ".json", p.to_json());
    write_atomic(c.out + ".csv", p.to_csv());
    out << "wrote " << c.out << ".json and " << c.out << ".csv\n";
  }
  if (c.format == "json")
    out << p.to_json() << '\n';
  else if (c.format == "csv")
    out << p.to_csv();
  else
    out << text_summary(p);
  return kOk;
}

int cmd_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.which.empty()) throw UsageError("check needs a kind: five, four, keylemma, phibound, psisharp");
  std::vector<CheckResult> all;
  try {
    for (const auto& s : subjects(c)) {
      auto rs = run_check(s, c.which, c);
      all.insert(all.end(), rs.begin(), rs.end());
    }
  } catch (const thm::PreconditionError& x) {
    err << "precondition not met: " << x.what() << '\n';
    return kUsage;
  } catch (const nev::NumericalError& x) {
    err << "numerical non-convergence in " << x.functional() << ": " << x.what() << '\n';
    return kNumerical;
  }
  Status st = Status::holds;
  for (const auto& r : all) st = thm::worst(st, r.status);
  std::string js = thm::results_json(all) + "\n";
  if (!c.out.empty()) write_atomic(c.out, js);
  if (c.format == "json") {
    out << js;
  } else {
    for (const auto& r : all) {
      out << r.summary() << '\n';
      for (const auto& w : r.witness) out << "    " << w << '\n';
    }
    out << "overall: " << thm::status_name(st) << '\n';
  }
  return exit_for(st);
}

int cmd_catalog(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.which == "list" || c.which.empty()) {
    for (auto id : catalog::all_ids()) out << catalog::id_name(id) << '\n';
    return kOk;
  }
  if (c.which == "describe") {
    if (c.example.empty()) throw UsageError("catalog describe needs an id");
    std::string js = load(c.example).to_json() + "\n";
    if (!c.out.empty()) write_atomic(c.out, js);
    out << js;
    return kOk;
  }
  throw UsageError("catalog action must be list or describe");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Value sharing of meromorphic functions: exact identities and Nevanlinna functionals", "nevlab"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  double rmin = 0, rmax = 0;
  int rcount = 0;
  auto* o_rmin = app.add_option("--rmin", rmin, "smallest radius of the r grid");
  auto* o_rmax = app.add_option("--rmax", rmax, "largest radius of the r grid");
  auto* o_rcount = app.add_option("--rcount", rcount, "number of radii");
  app.add_flag("--linear", c.linear, "arithmetic instead of geometric r grid");
  app.add_option("--tol-quad", c.tol_quad, "tolerance of the proximity quadrature");
  app.add_option("--tol-root", c.tol_root, "relative cluster diameter for multiple a-points");
  app.add_option("--out", c.out, "output path (profile: prefix of .json and .csv)");
  app.add_option("--format", c.format, "text, json or csv");
  app.add_option("--pair", c.pair, "branch pair of the triple, e.g. 0-1");
  app.add_option("--f", c.f_expr, "f as a rational expression in e^z");
  app.add_option("--g", c.g_expr, "g as a rational expression in e^z");
  app.add_option("--values", c.values, "shared values, comma separated, inf for infinity");

  auto* verify = app.add_subcommand("verify", "exact verifications of a catalog example");
  verify->add_option("id", c.example)->required();
  auto* table = app.add_subcommand("table", "the Phi / Psi table of the examples with exact forms");
  auto* profile = app.add_subcommand("profile", "Nevanlinna functionals on an r grid");
  profile->add_option("id", c.example);
  auto* check = app.add_subcommand("check", "theorem checks: five, four, keylemma, phibound, psisharp");
  std::vector<std::string> check_args;
  check->add_option("args", check_args, "[id] which")->expected(1, 2)->required();
  auto* cat = app.add_subcommand("catalog", "list or describe the examples");
  cat->add_option("action", c.which);
  cat->add_option("id", c.example);
  for (auto* s : {verify, table, profile, check, cat}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (o_rmin->count()) c.rmin = rmin;
  if (o_rmax->count()) c.rmax = rmax;
  if (o_rcount->count()) c.rcount = rcount;

  try {
    c.validate();
    if (*verify) {
      c.command = "verify";
      return cmd_verify(c, out, err);
    }
    if (*table) {
      c.command = "table";
      std::vector<ExampleEntry> es;
      for (auto id : catalog::all_ids()) es.push_back(catalog::build(id));
      return cmd_table(es, c, out, err);
    }
    if (*profile) {
      c.command = "profile";
      return cmd_profile(c, out, err);
    }
    if (*check) {
      c.command = "check";
      // "check four --f ... --g ..." has no id: a single positional is the kind
      c.which = check_args.back();
      if (check_args.size() == 2) c.example = check_args.front();
      c.validate();
      return cmd_check(c, out, err);
    }
    c.command = "catalog";
    return cmd_catalog(c, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const catalog::CatalogError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kFailed;
  } catch (const nev::NumericalError& e) {
    err << "numerical non-convergence in " << e.functional() << ": " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace nevlab::cli
