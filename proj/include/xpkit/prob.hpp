#pragma once

#include <vector>

#include "xpkit/explanation.hpp"
#include "xpkit/model.hpp"
#include "xpkit/rational.hpp"

namespace xpkit {

struct PathCount {
  std::vector<int> nodes;
  int klass = 0;
  BigInt count;  // #(R; v, X)
};

/// Points of the slice x_X = v_X consistent with `path`: the product over
/// features of n_i (fixed: 1 or 0 by consistency; free: |E_i| if tested,
/// |D_i| otherwise).
BigInt path_count(const TreePath& path, const FeatureSpace& space, const Point& v,
                  const FeatureSet& fixed);

std::vector<PathCount> path_counts(const DecisionTree& dt, const FeatureSpace& space,
                                   const Instance& inst, const FeatureSet& fixed);

/// Counts behind the conditional probability, before reduction.
struct ProbabilityCounts {
  BigInt favourable;  // sum over paths predicting c
  BigInt total;       // sum over all paths

  Rational value() const { return Rational(favourable, total); }
  std::string unreduced() const { return favourable.str() + "/" + total.str(); }
};

ProbabilityCounts probability_counts(const DecisionTree& dt, const FeatureSpace& space,
                                     const Instance& inst, const FeatureSet& fixed);

Rational conditional_probability(const DecisionTree& dt, const FeatureSpace& space,
                                 const Instance& inst, const FeatureSet& fixed);

/// Pr(kappa(x) = c | x_X = v_X) >= delta. Throws Contract unless 0 < delta <= 1.
bool weak_paxp(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst,
               const FeatureSet& fixed, const Rational& delta);

/// Deletion passes in `order` (default ascending), repeated until stable:
/// drop a feature whenever the rest is still a weak PAXp. The result has no
/// single removable feature.
Explanation locally_minimal_paxp(const DecisionTree& dt, const FeatureSpace& space,
                                 const Instance& inst, const Rational& delta,
                                 const std::vector<int>& order = {});

}  // namespace xpkit
