#pragma once

#include <vector>

#include "xpkit/explanation.hpp"
#include "xpkit/hitting_sets.hpp"
#include "xpkit/model.hpp"

namespace xpkit {

/// For each feasible path R with class != c: the features whose value in v
/// falls outside the path's (intersected) literal. Paths in dt.paths() order.
SetCollection dt_inconsistency_sets(const DecisionTree& dt, const FeatureSpace& space,
                                    const Instance& inst);

/// AXp as a subset-minimal hitting set of the inconsistency sets.
Explanation dt_one_axp(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst);

/// All CXp's: the inconsistency sets with supersets removed.
std::vector<Explanation> dt_all_cxps(const DecisionTree& dt, const FeatureSpace& space,
                                     const Instance& inst);

/// Probe points for a monotonic classifier: free features range over the
/// whole domain, fixed ones stay at v.
struct BoundVectors {
  Point lower;
  Point upper;

  void free(const FeatureSpace& space, int feature);
  void fix(const Point& v, int feature);
};

BoundVectors all_fixed(const Point& v);
BoundVectors all_free(const FeatureSpace& space);

/// Frees features in `order` (default ascending id), refixing any whose
/// freeing splits the bound classes. Throws Model if kappa(lower) ranks
/// above kappa(upper).
Explanation mono_one_axp(const Model& model, const Instance& inst, const std::vector<int>& order = {});

/// Throws Contract ("no CXp exists") when freeing every feature cannot
/// change the class.
Explanation mono_one_cxp(const Model& model, const Instance& inst, const std::vector<int>& order = {});

}  // namespace xpkit
