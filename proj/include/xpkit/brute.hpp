#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xpkit/constraints.hpp"
#include "xpkit/explanation.hpp"
#include "xpkit/hitting_sets.hpp"
#include "xpkit/model.hpp"

namespace xpkit::brute {

/// Largest feature space (and powerset) the exhaustive routines will scan.
struct SpaceGuard {
  std::size_t max_points = std::size_t{1} << 20;

  /// Default guard, overridden by the XPKIT_SPACE_GUARD environment variable.
  static SpaceGuard from_env();
};

struct Options {
  const ConstraintSet* constraints = nullptr;
  std::optional<int> epsilon;
  SpaceGuard guard = SpaceGuard::from_env();
};

/// Prediction by direct evaluation, written independently of Model::predict.
int predict(const Model& model, const Point& p);

/// Number of features where a and b differ.
int hamming(const Point& a, const Point& b);

/// First point in odometer order that agrees with the instance on `fixed`,
/// is allowed and local, and is classified differently.
std::optional<Point> counterexample(const Model& model, const Instance& inst,
                                    const FeatureSet& fixed, const Options& opts = {});

/// kind is WeakAXp or WeakCXp (AXp/CXp are read as their weak forms).
bool predicate(const Model& model, const Instance& inst, XpKind kind, const FeatureSet& s,
               const Options& opts = {});

/// All AXp's or all CXp's, sorted lexicographically.
SetCollection enumerate(const Model& model, const Instance& inst, XpKind kind,
                        const Options& opts = {});

struct GlobalResult {
  std::vector<ValueTerm> axps;             // minimal terms entailing class c
  std::vector<ValueTerm> counterexamples;  // minimal terms entailing a class other than c
};

GlobalResult global(const Model& model, int klass, const Options& opts = {});

/// |{x in slice : kappa(x) = c}| / |slice| where the slice fixes `fixed`.
Rational conditional_probability(const Model& model, const Instance& inst, const FeatureSet& fixed,
                                 const Options& opts = {});

}  // namespace xpkit::brute
