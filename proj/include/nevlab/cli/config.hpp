#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nevlab::cli {

enum Exit : int { kOk = 0, kUsage = 1, kFailed = 2, kNumerical = 3, kInconclusive = 4 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;  // verify, table, profile, check, catalog
  std::string example;  // catalog id
  std::string which;    // check kind, or catalog action
  std::string pair;     // branch pair of the triple, e.g. "0-1"; empty means all pairs
  std::string f_expr, g_expr;  // rational expressions in e^z instead of an id
  std::string values;          // comma separated, "inf" for infinity
  std::optional<double> rmin, rmax;
  std::optional<int> rcount;
  bool linear = false;  // arithmetic instead of geometric grid
  double tol_quad = 1e-4;
  double tol_root = 1e-8;
  std::string out;
  std::string format = "text";  // text, json, csv
  std::string config_file;

  /// Throws UsageError on an invalid combination.
  void validate() const;
  /// The r grid: flags override the given default grid endpoints and size.
  std::vector<double> grid(const std::vector<double>& fallback) const;
};

/// Writes data to path through a temporary file renamed on success.
void write_atomic(const std::string& path, const std::string& data);

}  // namespace nevlab::cli
