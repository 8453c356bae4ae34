#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "xpkit/constraints.hpp"
#include "xpkit/hitting_sets.hpp"
#include "xpkit/model.hpp"

namespace xpkit::test {

std::filesystem::path data_path(const std::string& name);
Model fixture_model(const std::string& name);      // "dt_example" -> data/dt_example.json
Instance fixture_instance(const std::string& name);  // data/<name>.instance.json

using Rng = std::mt19937_64;

/// 1..max_features features with domain sizes 2..max_domain (some boolean).
FeatureSpace random_space(Rng& rng, int max_features, int max_domain, int num_classes = 2);

/// Every internal node tests a feature not yet tested on its path and
/// partitions the domain into 2 or more groups, so every leaf is reachable.
DecisionTree random_tree(Rng& rng, const FeatureSpace& space, int max_depth);

DecisionList random_list(Rng& rng, const FeatureSpace& space, int num_rules);

/// One rule per tree path: non-overlapping and covering by construction.
DecisionSet tree_to_set(const DecisionTree& dt);

std::vector<int> random_table(Rng& rng, const FeatureSpace& space);

/// Class = weighted value sum bucketed by thresholds; monotone in every feature.
std::vector<int> random_monotone_table(Rng& rng, const FeatureSpace& space);

Model random_model(Rng& rng, const FeatureSpace& space, int kind);  // kind in 0..4

Point random_point(Rng& rng, const FeatureSpace& space);

ConstraintSet random_constraints(Rng& rng, const FeatureSpace& space, const Point& keep);

/// Plain re-implementation of the quantifiers over F using Model::predict.
namespace naive {

bool has_counterexample(const Model& model, const Instance& inst, const FeatureSet& fixed,
                        const ConstraintSet* constraints = nullptr, int epsilon = -1);
bool weak_axp(const Model& model, const Instance& inst, const FeatureSet& s,
              const ConstraintSet* constraints = nullptr, int epsilon = -1);
bool weak_cxp(const Model& model, const Instance& inst, const FeatureSet& s,
              const ConstraintSet* constraints = nullptr, int epsilon = -1);
/// All subset-minimal sets satisfying the weak predicate, sorted.
SetCollection all_axps(const Model& model, const Instance& inst,
                       const ConstraintSet* constraints = nullptr, int epsilon = -1);
SetCollection all_cxps(const Model& model, const Instance& inst,
                       const ConstraintSet* constraints = nullptr, int epsilon = -1);
/// favourable and total counts over the slice fixing `fixed`.
std::pair<long, long> slice_counts(const Model& model, const Instance& inst, const FeatureSet& fixed);

}  // namespace naive

FeatureSet without(const FeatureSet& s, int x);
FeatureSet subset_from_mask(unsigned mask, int m);

}  // namespace xpkit::test
