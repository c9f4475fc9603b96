#pragma once

#include <ostream>
#include <vector>

#include "nevlab/catalog/catalog.hpp"
#include "nevlab/cli/config.hpp"

namespace nevlab::cli {

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);
/// Table rows for the entries with exact forms.
int cmd_table(const std::vector<catalog::ExampleEntry>& entries, const RunConfig& c, std::ostream& out,
              std::ostream& err);
int cmd_profile(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_catalog(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11, optional key=value config file, flags win) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nevlab::cli
