#pragma once

#include <string>
#include <vector>

#include "xpkit/explain.hpp"
#include "xpkit/hitting_sets.hpp"

namespace xpkit {

/// Complete AXp and CXp collections computed by one route.
struct RouteResult {
  std::string route;
  SetCollection axps;
  SetCollection cxps;
};

struct NamedCheck {
  std::string name;
  bool ok = false;
};

struct CrosscheckReport {
  std::vector<RouteResult> routes;  // the first route is the brute-force oracle
  std::vector<NamedCheck> checks;

  bool agree() const;
};

/// Runs every applicable route (brute force, SAT enumeration, MUS/MCS
/// enumeration of the encoding, native backends, tractable DT route, Horn
/// route) and a set of consistency checks against the brute-force oracle.
CrosscheckReport crosscheck(const Model& model, const Instance& inst, const ContextOptions& options);

}  // namespace xpkit
