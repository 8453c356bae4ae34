#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xpkit/sat.hpp"
#include "xpkit/soft.hpp"

namespace xpkit::sat {

/// "p cnf <vars> <clauses>" followed by one zero-terminated clause per line.
std::string to_dimacs(const CnfFormula& f, const std::vector<std::string>& comments = {});

/// Accepts comment lines and clauses spanning lines. Throws Io on bad input.
CnfFormula parse_dimacs(std::string_view text);

struct DimacsExport {
  std::string cnf;
  std::string sidecar_json;
};

/// Hard clauses plus each soft clause guarded by a fresh selector. The
/// sidecar maps selectors to soft clauses and names encoding variables.
DimacsExport export_partition(const SoftPartition& p, const std::map<int, std::string>& var_names);

}  // namespace xpkit::sat
