#include "nevlab/nevanlinna/profile.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "nevlab/nevanlinna/parallel.hpp"

namespace nevlab::nev {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const ValueSeries& NevProfile::series(const std::string& label) const {
  for (const auto& v : values)
    if (v.value.label == label) return v;
  throw std::out_of_range("no tracked value '" + label + "'");
}

std::vector<std::string> NevProfile::invariant_violations() const {
  std::vector<std::string> out;
  auto check = [&](const std::string& name, const std::vector<double>& s) {
    if (s.empty()) return;
    if (s.size() != r_grid.size()) {
      out.push_back(name + ": length differs from the grid");
      return;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < -1e-9) out.push_back(name + ": negative at r=" + format_double(r_grid[i]));
      if (i && s[i] < s[i - 1] - 1e-9 * std::max(1.0, std::abs(s[i])))
        out.push_back(name + ": decreasing at r=" + format_double(r_grid[i]));
    }
  };
  auto below = [&](const std::string& name, const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      if (a[i] > b[i] + 1e-9 * std::max(1.0, std::abs(b[i])))
        out.push_back(name + " at r=" + format_double(r_grid[i]));
  };
  check("T_f", T_f);
  check("T_g", T_g);
  for (const auto& v : values) {
    const std::string& L = v.value.label;
    for (double m : v.m_f)
      if (m < 0) out.push_back("m_f[" + L + "] negative");
    for (double m : v.m_g)
      if (m < 0) out.push_back("m_g[" + L + "] negative");
    check("N_f[" + L + "]", v.N_f);
    check("Nbar_f[" + L + "]", v.Nbar_f);
    check("N_g[" + L + "]", v.N_g);
    check("Nbar_g[" + L + "]", v.Nbar_g);
    check("Ns[" + L + "]", v.Ns);
    below("Nbar_f > N_f [" + L + "]", v.Nbar_f, v.N_f);
    below("Nbar_g > N_g [" + L + "]", v.Nbar_g, v.N_g);
    below("Ns > Nbar_f [" + L + "]", v.Ns, v.Nbar_f);
    below("Ns > Nbar_g [" + L + "]", v.Ns, v.Nbar_g);
  }
  return out;
}

namespace {

json value_json(const ExtValue& a) {
  json j{{"label", a.label}, {"inf", a.inf}};
  if (!a.inf) j["re"] = a.a.real(), j["im"] = a.a.imag();
  return j;
}

ExtValue value_from(const json& j) {
  if (j.at("inf").get<bool>()) {
    auto v = ExtValue::infinity();
    v.label = j.at("label").get<std::string>();
    return v;
  }
  return ExtValue::finite({j.at("re").get<double>(), j.at("im").get<double>()}, j.at("label").get<std::string>());
}

}  // namespace

std::string NevProfile::to_json() const {
  json j;
  j["f_id"] = f_id;
  j["g_id"] = g_id;
  j["r_grid"] = r_grid;
  j["T_f"] = T_f;
  j["T_g"] = T_g;
  j["T"] = T;
  j["meta"] = {{"locate_radius", locate_radius},
               {"worst_integrality_gap", worst_integrality_gap},
               {"proximity_tol", proximity_tol}};
  j["values"] = json::array();
  for (const auto& v : values) {
    json s = value_json(v.value);
    s["m_f"] = v.m_f;
    s["N_f"] = v.N_f;
    s["Nbar_f"] = v.Nbar_f;
    s["m_g"] = v.m_g;
    s["N_g"] = v.N_g;
    s["Nbar_g"] = v.Nbar_g;
    s["Ns"] = v.Ns;
    s["mult_max_f"] = v.mult_max_f;
    s["mult_max_g"] = v.mult_max_g;
    j["values"].push_back(s);
  }
  return j.dump(2);
}

NevProfile NevProfile::from_json(const std::string& text) {
  json j = json::parse(text);
  NevProfile p;
  p.f_id = j.at("f_id").get<std::string>();
  p.g_id = j.at("g_id").get<std::string>();
  p.r_grid = j.at("r_grid").get<std::vector<double>>();
  p.T_f = j.at("T_f").get<std::vector<double>>();
  p.T_g = j.at("T_g").get<std::vector<double>>();
  p.T = j.at("T").get<std::vector<double>>();
  const auto& meta = j.at("meta");
  p.locate_radius = meta.at("locate_radius").get<double>();
  p.worst_integrality_gap = meta.at("worst_integrality_gap").get<double>();
  p.proximity_tol = meta.at("proximity_tol").get<double>();
  for (const auto& s : j.at("values")) {
    ValueSeries v;
    v.value = value_from(s);
    v.m_f = s.at("m_f").get<std::vector<double>>();
    v.N_f = s.at("N_f").get<std::vector<double>>();
    v.Nbar_f = s.at("Nbar_f").get<std::vector<double>>();
    v.m_g = s.at("m_g").get<std::vector<double>>();
    v.N_g = s.at("N_g").get<std::vector<double>>();
    v.Nbar_g = s.at("Nbar_g").get<std::vector<double>>();
    v.Ns = s.at("Ns").get<std::vector<double>>();
    v.mult_max_f = s.at("mult_max_f").get<int>();
    v.mult_max_g = s.at("mult_max_g").get<int>();
    p.values.push_back(std::move(v));
  }
  return p;
}

std::string NevProfile::to_csv() const {
  std::vector<std::pair<std::string, const std::vector<double>*>> cols;
  cols.push_back({"T_f", &T_f});
  if (is_pair()) cols.push_back({"T_g", &T_g});
  cols.push_back({"T", &T});
  for (const auto& v : values) {
    const std::string L = "[" + v.value.label + "]";
    cols.push_back({"m_f" + L, &v.m_f});
    cols.push_back({"N_f" + L, &v.N_f});
    cols.push_back({"Nbar_f" + L, &v.Nbar_f});
    if (is_pair()) {
      cols.push_back({"m_g" + L, &v.m_g});
      cols.push_back({"N_g" + L, &v.N_g});
      cols.push_back({"Nbar_g" + L, &v.Nbar_g});
      cols.push_back({"Ns" + L, &v.Ns});
    }
  }
  std::ostringstream os;
  os << "r";
  for (const auto& c : cols) os << ',' << c.first;
  os << '\n';
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    os << format_double(r_grid[i]);
    for (const auto& c : cols) os << ',' << (i < c.second->size() ? format_double((*c.second)[i]) : "");
    os << '\n';
  }
  return os.str();
}

namespace {

/// Runs fn, converting failures into a NumericalError naming the functional.
template <class F>
auto named(const std::string& functional, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const NumericalError&) {
    throw;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalError(functional, e.what());
  }
}

}  // namespace

NevProfile compute_profile(const MeroFunc& f, const std::string& f_id, const MeroFunc* g, const std::string& g_id,
                           const std::vector<ExtValue>& values, const std::vector<double>& grid,
                           const ProfileOptions& opt) {
  check_grid(grid);
  NevProfile p;
  p.f_id = f_id;
  p.g_id = g ? g_id : "";
  if (g && p.g_id.empty()) p.g_id = "g";
  p.r_grid = grid;
  p.proximity_tol = opt.proximity_tol;
  p.T_f = named("T(r,f)", [&] { return characteristic_T(f, grid, opt.t); });
  if (g) p.T_g = named("T(r,g)", [&] { return characteristic_T(*g, grid, opt.t); });
  for (std::size_t i = 0; i < grid.size(); ++i) p.T.push_back(g ? std::max(p.T_f[i], p.T_g[i]) : p.T_f[i]);

  const double rmax = grid.back();
  p.locate_radius = rmax;
  auto proximity = [&](const MeroFunc& h, const ExtValue& a, const std::string& name) {
    std::vector<double> m(grid.size());
    if (opt.with_proximity)
      named(name, [&] {
        parallel_for(grid.size(), [&](std::size_t i) { m[i] = proximity_m(h, a, grid[i], p.proximity_tol).value; });
        return 0;
      });
    return m;
  };
  auto max_mult = [](const APointList& l) {
    int m = 0;
    for (const auto& q : l.points) m = std::max(m, q.mult);
    return m;
  };
  for (const auto& a : values) {
    ValueSeries s;
    s.value = a;
    const std::string L = a.label;
    APointList fa = named("N(r," + L + ",f)", [&] { return locate_apoints(f, a, rmax, opt.locate); });
    auto cf = counting_from(fa, grid);
    s.N_f = cf.N;
    s.Nbar_f = cf.Nbar;
    s.mult_max_f = max_mult(fa);
    s.m_f = proximity(f, a, "m(r," + L + ",f)");
    p.worst_integrality_gap = std::max(p.worst_integrality_gap, fa.integrality_gap);
    p.locate_radius = std::max(p.locate_radius, fa.r);
    if (g) {
      APointList ga = named("N(r," + L + ",g)", [&] { return locate_apoints(*g, a, rmax, opt.locate); });
      auto cg = counting_from(ga, grid);
      s.N_g = cg.N;
      s.Nbar_g = cg.Nbar;
      s.mult_max_g = max_mult(ga);
      s.m_g = proximity(*g, a, "m(r," + L + ",g)");
      s.Ns = named("N_s(r," + L + ")", [&] { return simple_common_from(fa, ga, grid); });
      p.worst_integrality_gap = std::max(p.worst_integrality_gap, ga.integrality_gap);
    }
    p.values.push_back(std::move(s));
  }
  return p;
}

double tau_estimate(const NevProfile& p, const std::string& label) {
  const auto& s = p.series(label);
  if (s.Ns.empty()) throw std::invalid_argument("tau needs a pair profile");
  return std::clamp(top_half_min_ratio(s.Ns, s.Nbar_f, 1.0), 0.0, 1.0);
}

}  // namespace nevlab::nev
