#include "xpkit/dimacs.hpp"

#include <sstream>

#include <json.hpp>

#include "xpkit/error.hpp"

namespace xpkit::sat {

std::string to_dimacs(const CnfFormula& f, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << f.num_vars() << ' ' << f.size() << '\n';
  for (const auto& clause : f.clauses()) {
    for (Lit l : clause) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  int declared_vars = 0;
  long declared_clauses = 0;
  CnfFormula f;
  Clause current;
  long clauses = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == 'c' || first == "%") continue;
    if (first == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf") {
        fail(ErrorKind::Io, "malformed DIMACS header: " + line);
      }
      header = true;
      f.reserve_vars(declared_vars);
      continue;
    }
    if (!header) fail(ErrorKind::Io, "DIMACS clause before header");
    std::istringstream ts(line);
    long v = 0;
    while (ts >> v) {
      if (v == 0) {
        f.add(current);
        current.clear();
        ++clauses;
      } else {
        if (std::labs(v) > declared_vars) fail(ErrorKind::Io, "DIMACS literal exceeds variable count");
        current.push_back(Lit::from_dimacs(static_cast<int>(v)));
      }
    }
    if (!ts.eof()) fail(ErrorKind::Io, "malformed DIMACS clause line: " + line);
  }
  if (!header) fail(ErrorKind::Io, "missing DIMACS header");
  if (!current.empty()) fail(ErrorKind::Io, "unterminated DIMACS clause");
  if (clauses != declared_clauses) fail(ErrorKind::Io, "DIMACS clause count does not match header");
  return f;
}

DimacsExport export_partition(const SoftPartition& p, const std::map<int, std::string>& var_names) {
  CnfFormula f = p.hard;
  for (const auto& c : p.soft) {
    for (Lit l : c) f.reserve_vars(l.var());
  }
  nlohmann::json selectors = nlohmann::json::array();
  for (std::size_t i = 0; i < p.soft.size(); ++i) {
    const int s = f.new_var();
    Clause g = p.soft[i];
    nlohmann::json lits = nlohmann::json::array();
    for (Lit l : g) lits.push_back(l.dimacs());
    g.push_back(Lit::neg(s));
    f.add(std::move(g));
    selectors.push_back({{"selector", s}, {"soft", i}, {"label", p.label(i)}, {"clause", lits}});
  }
  nlohmann::json names = nlohmann::json::object();
  for (const auto& [v, name] : var_names) names[std::to_string(v)] = name;
  nlohmann::json side = {{"num_vars", f.num_vars()},
                         {"num_clauses", f.size()},
                         {"num_hard", p.hard.size()},
                         {"selectors", selectors},
                         {"variables", names}};
  return {to_dimacs(f, {"hard clauses first; soft clause i is guarded by its selector",
                        "assume every selector true to assert all soft clauses"}),
          side.dump(2) + "\n"};
}

}  // namespace xpkit::sat
