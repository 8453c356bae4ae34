#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xpkit/model.hpp"

namespace xpkit {

using SetCollection = std::vector<FeatureSet>;

/// True when `h` intersects every member of `sets`.
bool hits_all(const FeatureSet& h, const SetCollection& sets);

/// Normalizes members, removes duplicates and members that are supersets of
/// other members, and sorts the result lexicographically.
SetCollection minimal_members(const SetCollection& sets);

/// Subset-minimal hitting set contained in `seed` (default: the union of all
/// members). Elements are dropped greedily in ascending order. Throws
/// Contract on an empty member or a seed that misses a member.
FeatureSet minimal_hitting_set(const SetCollection& sets,
                               const std::optional<FeatureSet>& seed = std::nullopt);

/// Minimum-cardinality hitting set by branch and bound; among optima the
/// lexicographically smallest sorted sequence is returned.
FeatureSet minimum_hitting_set(const SetCollection& sets);

/// Same optimum size via SAT with a sequential-counter bound (cross-check).
FeatureSet minimum_hitting_set_sat(const SetCollection& sets);

struct HittingSetGuard {
  std::size_t max_universe = 32;
  std::size_t max_partial = 200000;
};

/// All subset-minimal hitting sets (Berge's algorithm), sorted
/// lexicographically. Throws Resource when the guard is exceeded.
SetCollection all_minimal_hitting_sets(const SetCollection& sets, HittingSetGuard guard = {});

}  // namespace xpkit
