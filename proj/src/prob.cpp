#include "xpkit/prob.hpp"

#include <algorithm>

#include "xpkit/error.hpp"

namespace xpkit {

BigInt path_count(const TreePath& path, const FeatureSpace& space, const Point& v,
                  const FeatureSet& fixed) {
  BigInt count = 1;
  for (int i = 1; i <= space.num_features(); ++i) {
    const Literal* lit = path.literal_for(i);
    const Domain& d = space.domain(i);
    if (contains(fixed, i)) {
      if (lit && !lit->holds(v)) return 0;
      continue;
    }
    if (lit) {
      const auto n = std::count_if(lit->values.begin(), lit->values.end(),
                                   [&](Value x) { return d.contains(x); });
      if (n == 0) return 0;
      count *= n;
    } else {
      count *= d.size();
    }
  }
  return count;
}

std::vector<PathCount> path_counts(const DecisionTree& dt, const FeatureSpace& space,
                                   const Instance& inst, const FeatureSet& fixed) {
  space.check_point(inst.point);
  const FeatureSet x = normalize(fixed);
  for (int i : x) space.feature(i);
  std::vector<PathCount> out;
  for (const TreePath& path : dt.paths()) {
    out.push_back({path.nodes, path.klass, path_count(path, space, inst.point, x)});
  }
  return out;
}

ProbabilityCounts probability_counts(const DecisionTree& dt, const FeatureSpace& space,
                                     const Instance& inst, const FeatureSet& fixed) {
  ProbabilityCounts pc{0, 0};
  for (const PathCount& p : path_counts(dt, space, inst, fixed)) {
    pc.total += p.count;
    if (p.klass == inst.klass) pc.favourable += p.count;
  }
  if (pc.total == 0) fail(ErrorKind::Model, "no tree path is consistent with the slice");
  return pc;
}

Rational conditional_probability(const DecisionTree& dt, const FeatureSpace& space,
                                 const Instance& inst, const FeatureSet& fixed) {
  return probability_counts(dt, space, inst, fixed).value();
}

bool weak_paxp(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst,
               const FeatureSet& fixed, const Rational& delta) {
  if (delta <= 0 || delta > 1) fail(ErrorKind::Contract, "delta must lie in (0, 1]");
  return conditional_probability(dt, space, inst, fixed) >= delta;
}

Explanation locally_minimal_paxp(const DecisionTree& dt, const FeatureSpace& space,
                                 const Instance& inst, const Rational& delta,
                                 const std::vector<int>& order) {
  FeatureSet s = space.all_features();
  if (!weak_paxp(dt, space, inst, s, delta)) {
    fail(ErrorKind::Contract, "instance class does not match the tree prediction");
  }
  const std::vector<int> visit = resolve_order(order, s, space.num_features());
  // Weak PAXp is not monotone: a feature kept early may become removable
  // after later drops, so sweep again until a pass removes nothing.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i : visit) {
      auto it = std::find(s.begin(), s.end(), i);
      if (it == s.end()) continue;
      FeatureSet rest = s;
      rest.erase(rest.begin() + (it - s.begin()));
      if (weak_paxp(dt, space, inst, rest, delta)) {
        s = std::move(rest);
        changed = true;
      }
    }
  }
  return {XpKind::PAXp, s, conditional_probability(dt, space, inst, s)};
}

}  // namespace xpkit
