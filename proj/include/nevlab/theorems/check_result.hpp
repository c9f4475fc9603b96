#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nevlab::thm {

/// A checker was called on input outside the theorem's hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Required series absent from a profile.
class MissingSeries : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Status { holds, fails, inconclusive };

std::string status_name(Status s);
/// fails > inconclusive > holds.
Status worst(Status a, Status b);

enum class Relation {
  le,  // lhs <= rhs + S(r)
  eq   // lhs = rhs + S(r)
};

struct CheckResult {
  std::string name;
  Status status = Status::inconclusive;
  std::string note;

  // grid witness; empty for exact checks
  Relation relation = Relation::le;
  std::vector<double> r, lhs, rhs;
  std::vector<double> margin;  // c L(r) - violation; negative means outside the slack
  double slack_c = 0.0;

  std::vector<std::string> witness;  // exact identities and sub-results

  /// lhs / rhs at the largest radius (NaN without grid data).
  double final_ratio() const;
  std::string summary() const;
  std::string to_json() const;
};

/// Scale of the S(r) allowance: max(1, log r).
double log_scale(double r);

/// Evaluates lhs (rel) rhs + c L(r) on the grid.  c is fitted on the bottom half of the grid
/// as max |violation| / L(r); the top half decides the status.
CheckResult grid_check(std::string name, Relation rel, const std::vector<double>& r, std::vector<double> lhs,
                       std::vector<double> rhs);

/// Worst-status merge of instances of one family (e.g. all index pairs of one inequality).
/// The grid data of the instance with the smallest margin is kept.
CheckResult merge_family(std::string name, const std::vector<CheckResult>& parts);

std::string results_json(const std::vector<CheckResult>& rs);

}  // namespace nevlab::thm
