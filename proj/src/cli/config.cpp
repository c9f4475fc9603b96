#include "nevlab/cli/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "nevlab/nevanlinna/functionals.hpp"

namespace nevlab::cli {

void RunConfig::validate() const {
  if (!(tol_quad > 0) || !(tol_root > 0)) throw UsageError("tolerances must be positive");
  if (rmin && !(*rmin > 0)) throw UsageError("--rmin must be positive");
  if (rmin && rmax && !(*rmin < *rmax)) throw UsageError("--rmin must be smaller than --rmax");
  if (rcount && *rcount < 4) throw UsageError("--rcount must be at least 4");
  static const std::set<std::string> formats{"text", "json", "csv"};
  if (!formats.count(format)) throw UsageError("--format must be text, json or csv");
  if (!example.empty() && !f_expr.empty()) throw UsageError("give either an example id or --f, not both");
  if (!g_expr.empty() && f_expr.empty()) throw UsageError("--g needs --f");
}

std::vector<double> RunConfig::grid(const std::vector<double>& fallback) const {
  double lo = rmin.value_or(fallback.front());
  double hi = rmax.value_or(fallback.back());
  int n = rcount.value_or(static_cast<int>(fallback.size()));
  if (!(lo > 0) || !(lo < hi)) throw UsageError("invalid r grid: need 0 < rmin < rmax");
  if (n < 4) throw UsageError("invalid r grid: need at least 4 radii");
  if (!linear) return nev::geometric_grid(lo, hi, n);
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(lo + (hi - lo) * k / (n - 1));
  g.back() = hi;
  return g;
}

void write_atomic(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << data;
    os.flush();
    if (!os) {
      os.close();
      fs::remove(tmp);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace nevlab::cli
