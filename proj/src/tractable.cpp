#include "xpkit/tractable.hpp"

#include <algorithm>

#include "xpkit/error.hpp"

namespace xpkit {

SetCollection dt_inconsistency_sets(const DecisionTree& dt, const FeatureSpace& space,
                                    const Instance& inst) {
  SetCollection out;
  for (const TreePath& path : dt.paths()) {
    if (path.klass == inst.klass) continue;
    bool feasible = true;
    FeatureSet inconsistent;
    for (const Literal& l : path.literals) {
      const Domain& d = space.domain(l.feature);
      feasible = feasible && std::any_of(l.values.begin(), l.values.end(),
                                         [&](Value x) { return d.contains(x); });
      if (!l.holds(inst.point)) inconsistent.push_back(l.feature);
    }
    if (!feasible) continue;
    if (inconsistent.empty()) {
      fail(ErrorKind::Contract, "instance is consistent with a path predicting another class");
    }
    out.push_back(normalize(std::move(inconsistent)));
  }
  return out;
}

Explanation dt_one_axp(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst) {
  return {XpKind::AXp, minimal_hitting_set(dt_inconsistency_sets(dt, space, inst)), std::nullopt};
}

std::vector<Explanation> dt_all_cxps(const DecisionTree& dt, const FeatureSpace& space,
                                     const Instance& inst) {
  std::vector<Explanation> out;
  for (auto& s : minimal_members(dt_inconsistency_sets(dt, space, inst))) {
    out.push_back({XpKind::CXp, std::move(s), std::nullopt});
  }
  return out;
}

void BoundVectors::free(const FeatureSpace& space, int feature) {
  lower[feature - 1] = space.domain(feature).lo;
  upper[feature - 1] = space.domain(feature).hi;
}

void BoundVectors::fix(const Point& v, int feature) {
  lower[feature - 1] = v[feature - 1];
  upper[feature - 1] = v[feature - 1];
}

BoundVectors all_fixed(const Point& v) { return {v, v}; }

BoundVectors all_free(const FeatureSpace& space) {
  BoundVectors b{Point(space.num_features()), Point(space.num_features())};
  for (int i = 1; i <= space.num_features(); ++i) b.free(space, i);
  return b;
}

namespace {

const MonotonicClassifier& require_monotonic(const Model& model) {
  const auto* mc = model.as<MonotonicClassifier>();
  if (!mc) fail(ErrorKind::Contract, "model is not a monotonic classifier");
  return *mc;
}

// Class indices of the bound probes; the class order is the chain order.
std::pair<int, int> bound_classes(const Model& model, const BoundVectors& b) {
  const int lo = model.predict(b.lower);
  const int hi = model.predict(b.upper);
  if (lo > hi) fail(ErrorKind::Model, "classifier is not monotone on the bound probes");
  return {lo, hi};
}

}  // namespace

Explanation mono_one_axp(const Model& model, const Instance& inst, const std::vector<int>& order) {
  require_monotonic(model);
  const FeatureSpace& space = model.space();
  const int m = space.num_features();
  BoundVectors b = all_fixed(inst.point);
  FeatureSet fixed = space.all_features();
  for (int i : resolve_order(order, space.all_features(), m)) {
    b.free(space, i);
    const auto [lo, hi] = bound_classes(model, b);
    if (lo != hi) {
      b.fix(inst.point, i);
    } else {
      fixed.erase(std::find(fixed.begin(), fixed.end(), i));
    }
  }
  return {XpKind::AXp, fixed, std::nullopt};
}

Explanation mono_one_cxp(const Model& model, const Instance& inst, const std::vector<int>& order) {
  require_monotonic(model);
  const FeatureSpace& space = model.space();
  const int m = space.num_features();
  BoundVectors b = all_free(space);
  {
    const auto [lo, hi] = bound_classes(model, b);
    if (lo == hi) fail(ErrorKind::Contract, "no CXp exists: the class cannot change");
  }
  FeatureSet free_set;
  for (int i : resolve_order(order, space.all_features(), m)) {
    b.fix(inst.point, i);
    const auto [lo, hi] = bound_classes(model, b);
    if (lo == hi) {
      b.free(space, i);
      free_set.push_back(i);
    }
  }
  return {XpKind::CXp, normalize(std::move(free_set)), std::nullopt};
}

}  // namespace xpkit
