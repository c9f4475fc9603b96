#include "nevlab/theorems/check_result.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "nevlab/nevanlinna/profile.hpp"

namespace nevlab::thm {

using nlohmann::json;

std::string status_name(Status s) {
  switch (s) {
    case Status::holds:
      return "holds";
    case Status::fails:
      return "fails";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Status worst(Status a, Status b) {
  auto rank = [](Status s) { return s == Status::fails ? 2 : s == Status::inconclusive ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

double log_scale(double r) { return std::max(1.0, std::log(r)); }

double CheckResult::final_ratio() const {
  if (lhs.empty() || rhs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return lhs.back() / rhs.back();
}

std::string CheckResult::summary() const {
  std::ostringstream os;
  os << name << ": " << status_name(status);
  if (!r.empty()) os << "  (c = " << slack_c << ", lhs/rhs at r=" << r.back() << ": " << final_ratio() << ")";
  if (!note.empty()) os << "  " << note;
  return os.str();
}

namespace {

json result_json(const CheckResult& c) {
  using nev::format_double;
  auto nums = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(format_double(x)));
    return a;
  };
  json j{{"name", c.name}, {"status", status_name(c.status)}};
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.r.empty()) {
    j["relation"] = c.relation == Relation::le ? "le" : "eq";
    j["slack_model"] = {{"form", "c*max(1,log r)"}, {"c", c.slack_c}};
    j["r"] = nums(c.r);
    j["lhs"] = nums(c.lhs);
    j["rhs"] = nums(c.rhs);
    j["margin"] = nums(c.margin);
  }
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

}  // namespace

std::string CheckResult::to_json() const { return result_json(*this).dump(2); }

std::string results_json(const std::vector<CheckResult>& rs) {
  json a = json::array();
  for (const auto& c : rs) a.push_back(result_json(c));
  return a.dump(2);
}

CheckResult grid_check(std::string name, Relation rel, const std::vector<double>& r, std::vector<double> lhs,
                       std::vector<double> rhs) {
  if (r.size() < 2 || lhs.size() != r.size() || rhs.size() != r.size())
    throw MissingSeries(name + ": series do not match the grid");
  CheckResult c;
  c.name = std::move(name);
  c.relation = rel;
  c.r = r;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  const std::size_t n = r.size(), half = n / 2;
  std::vector<double> viol(n), eps(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = c.lhs[i] - c.rhs[i];
    viol[i] = rel == Relation::eq ? std::abs(d) : d;
    eps[i] = 1e-6 * std::max({1.0, std::abs(c.lhs[i]), std::abs(c.rhs[i])});
  }
  for (std::size_t i = 0; i < half; ++i) c.slack_c = std::max(c.slack_c, std::max(0.0, viol[i]) / log_scale(r[i]));

  bool within = true, beyond = false;
  for (std::size_t i = 0; i < n; ++i) {
    double allow = c.slack_c * log_scale(r[i]);
    c.margin.push_back(allow - viol[i]);
    if (i < half) continue;
    if (!(viol[i] <= allow + eps[i])) within = false;
    if (!(viol[i] <= 2 * allow + eps[i])) beyond = true;
  }
  c.status = within ? Status::holds : beyond ? Status::fails : Status::inconclusive;
  return c;
}

CheckResult merge_family(std::string name, const std::vector<CheckResult>& parts) {
  if (parts.empty()) throw std::invalid_argument(name + ": nothing to merge");
  const CheckResult* pick = &parts.front();
  auto low = [](const CheckResult& c) {
    double m = INFINITY;
    for (double x : c.margin) m = std::min(m, x);
    return m;
  };
  Status s = Status::holds;
  CheckResult out;
  for (const auto& p : parts) {
    s = worst(s, p.status);
    if (low(p) < low(*pick)) pick = &p;
    out.witness.push_back(p.name + ": " + status_name(p.status));
  }
  out.name = std::move(name);
  out.status = s;
  out.relation = pick->relation;
  out.r = pick->r;
  out.lhs = pick->lhs;
  out.rhs = pick->rhs;
  out.margin = pick->margin;
  out.slack_c = pick->slack_c;
  out.note = "tightest instance " + pick->name;
  return out;
}

}  // namespace nevlab::thm
