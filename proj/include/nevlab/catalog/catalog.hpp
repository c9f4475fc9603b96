#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nevlab/exactfield/divisor.hpp"
#include "nevlab/meroeval/triple.hpp"

namespace nevlab::catalog {

using mero::cplx;

enum class ExampleId { polya, gundersen, reinders, steinmetz_triple };

const std::vector<ExampleId>& all_ids();
std::string id_name(ExampleId id);
std::optional<ExampleId> parse_id(std::string_view s);

/// Construction produced an entry that fails its own checks.
class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Set of (mult_f, mult_g) pairs.
using Pattern = std::set<std::pair<int, int>>;

struct TableRow {
  exact::ExactFunc phi_f, phi_g, psi, phi;
};

struct SharedValue {
  exact::ExactValue exact;
  mero::ExtValue numeric;
};

struct PairRef {
  int f = 0, g = 1;  // indices into ExampleEntry::numeric
  std::string name;  // e.g. "0-1"
};

struct ExampleEntry {
  ExampleId id = ExampleId::polya;
  std::string name;
  std::string description;
  std::vector<std::string> function_names;
  std::vector<exact::ExactFunc> exact;  // empty for the triple
  std::vector<mero::MeroPtr> numeric;
  std::vector<SharedValue> values;
  std::optional<mero::CurveParam> curve;  // elliptic model parametrisation
  mero::TriplePtr triple;
  std::optional<TableRow> printed_row;  // the table row as printed
  std::vector<PairRef> pairs;
  std::vector<double> default_grid;
  std::vector<std::string> verification_log;

  bool has_exact() const { return !exact.empty(); }
  std::vector<mero::ExtValue> ext_values() const;
  std::vector<exact::ExactValue> exact_values() const;
  /// Finite values, the order used by phi_pair.
  std::vector<exact::Coeff> finite_values() const;
  bool infinity_shared() const;
  const PairRef& pair(const std::string& name) const;
  /// JSON descriptor (forms, values, patterns, grid).
  std::string to_json() const;
};

/// Builds and self-verifies an entry; throws CatalogError on a failed check.
ExampleEntry build(ExampleId id);

/// Expected (mult_f, mult_g) patterns per value label.  For the triple the set ranges over
/// the points of one branch pair.
std::map<std::string, Pattern> expected_patterns(ExampleId id);

/// phi_pair / mues_psi output; throws std::invalid_argument without exact forms.
TableRow computed_row(const ExampleEntry& e);

/// |(u')^2 - P(u)| / max(1, |u'|^2) at z.
double ode_residual(const mero::CurveParam& c, const exact::Poly& p, cplx z);

/// Deterministic sample points in the square [-h, h]^2.
std::vector<cplx> sample_points(int n, double h, unsigned seed);

/// Multiplicity multiset per value across the three branches, from one branch cell each.
struct TripleCellReport {
  std::string value;
  std::vector<std::vector<int>> mults;  // per branch, sorted
};
std::vector<TripleCellReport> triple_cell_report(const ExampleEntry& e);

}  // namespace nevlab::catalog
