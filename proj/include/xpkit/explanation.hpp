#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xpkit/model.hpp"
#include "xpkit/rational.hpp"

namespace xpkit {

enum class XpKind { AXp, CXp, WeakAXp, WeakCXp, PAXp };

const char* to_string(XpKind kind);

struct Explanation {
  XpKind kind = XpKind::AXp;
  FeatureSet features;
  std::optional<Rational> probability;  // PAXp only
};

/// A literal set x_i = u_i, sorted by feature; used for global explanations.
using ValueTerm = std::vector<std::pair<int, Value>>;

/// Traversal order over `universe`: the listed ids that belong to it, then the
/// remaining ones ascending. Throws Contract on unknown or repeated ids.
std::vector<int> resolve_order(const std::vector<int>& order, const FeatureSet& universe,
                               int num_features);

}  // namespace xpkit
