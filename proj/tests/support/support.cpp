#include "support.hpp"

#include <algorithm>
#include <functional>

#include "xpkit/model_io.hpp"

namespace xpkit::test {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(XPKIT_DATA_DIR) / name;
}

Model fixture_model(const std::string& name) { return load_model(data_path(name + ".json")); }

Instance fixture_instance(const std::string& name) {
  return load_instance(fixture_model(name), data_path(name + ".instance.json"));
}

FeatureSpace random_space(Rng& rng, int max_features, int max_domain, int num_classes) {
  const int m = std::uniform_int_distribution<int>(1, max_features)(rng);
  std::vector<Feature> fs;
  for (int i = 1; i <= m; ++i) {
    const int size = std::uniform_int_distribution<int>(2, max_domain)(rng);
    fs.push_back({i, "", size == 2 && rng() % 2 ? Domain::Bool() : Domain::Range(0, size - 1)});
  }
  std::vector<std::string> classes;
  for (int k = 0; k < num_classes; ++k) classes.push_back(std::to_string(k));
  return FeatureSpace(std::move(fs), std::move(classes), true);
}

DecisionTree random_tree(Rng& rng, const FeatureSpace& space, int max_depth) {
  std::vector<TreeNode> nodes;
  int next_id = 1;
  std::function<int(std::vector<int>, int)> build = [&](std::vector<int> untested, int depth) {
    const int id = next_id++;
    nodes.push_back({});
    const std::size_t slot = nodes.size() - 1;
    TreeNode n;
    n.id = id;
    if (untested.empty() || depth >= max_depth || rng() % 4 == 0) {
      n.klass = static_cast<int>(rng() % space.num_classes());
      nodes[slot] = n;
      return id;
    }
    const std::size_t pick = rng() % untested.size();
    n.feature = untested[pick];
    untested.erase(untested.begin() + static_cast<long>(pick));
    ValueSet values = space.domain(n.feature).values();
    std::shuffle(values.begin(), values.end(), rng);
    const int groups = std::uniform_int_distribution<int>(2, static_cast<int>(values.size()))(rng);
    std::vector<ValueSet> parts(groups);
    for (std::size_t k = 0; k < values.size(); ++k) {
      parts[k < static_cast<std::size_t>(groups) ? k : rng() % groups].push_back(values[k]);
    }
    for (auto& part : parts) {
      std::sort(part.begin(), part.end());
      n.edges.push_back({part, build(untested, depth + 1)});
    }
    nodes[slot] = n;
    return id;
  };
  std::vector<int> all;
  for (int i = 1; i <= space.num_features(); ++i) all.push_back(i);
  build(all, 0);
  return DecisionTree(std::move(nodes), 1);
}

namespace {

Literal random_literal(Rng& rng, const FeatureSpace& space, int feature) {
  ValueSet values;
  for (Value v : space.domain(feature).values()) {
    if (rng() % 2) values.push_back(v);
  }
  if (values.empty()) values.push_back(space.domain(feature).lo);
  return {feature, values};
}

}  // namespace

DecisionList random_list(Rng& rng, const FeatureSpace& space, int num_rules) {
  DecisionList dl;
  for (int r = 0; r < num_rules; ++r) {
    Rule rule;
    const int len = std::uniform_int_distribution<int>(1, std::min(3, space.num_features()))(rng);
    FeatureSet fs = space.all_features();
    std::shuffle(fs.begin(), fs.end(), rng);
    fs.resize(len);
    std::sort(fs.begin(), fs.end());
    for (int f : fs) rule.condition.push_back(random_literal(rng, space, f));
    rule.klass = static_cast<int>(rng() % space.num_classes());
    dl.rules.push_back(rule);
  }
  dl.rules.push_back({{}, static_cast<int>(rng() % space.num_classes())});
  return dl;
}

DecisionSet tree_to_set(const DecisionTree& dt) {
  DecisionSet ds;
  for (const auto& p : dt.paths()) ds.rules.push_back({p.literals, p.klass});
  return ds;
}

std::vector<int> random_table(Rng& rng, const FeatureSpace& space) {
  std::vector<int> t(static_cast<std::size_t>(space.point_count()));
  for (int& k : t) k = static_cast<int>(rng() % space.num_classes());
  return t;
}

std::vector<int> random_monotone_table(Rng& rng, const FeatureSpace& space) {
  std::vector<int> w;
  int max_score = 0;
  for (int i = 1; i <= space.num_features(); ++i) {
    w.push_back(std::uniform_int_distribution<int>(0, 3)(rng));
    max_score += w.back() * space.domain(i).hi;
  }
  std::vector<int> cuts;
  for (int k = 1; k < space.num_classes(); ++k) {
    cuts.push_back(std::uniform_int_distribution<int>(0, max_score + 1)(rng));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> t;
  Point p = space.first_point();
  do {
    int s = 0;
    for (int i = 0; i < space.num_features(); ++i) s += w[i] * p[i];
    t.push_back(static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), s) - cuts.begin()));
  } while (space.next_point(p));
  return t;
}

Model random_model(Rng& rng, const FeatureSpace& space, int kind) {
  for (;;) {
    Model::Body body = TabularClassifier{random_table(rng, space)};
    switch (kind) {
      case 0: body = random_tree(rng, space, 4); break;
      case 1: body = random_list(rng, space, 1 + static_cast<int>(rng() % 4)); break;
      case 2: body = tree_to_set(random_tree(rng, space, 4)); break;
      case 3: body = MonotonicClassifier{random_monotone_table(rng, space)}; break;
      default: break;
    }
    Model model(space, std::move(body));
    if (!validate_model(model).ok()) continue;
    // Constant classifiers admit no contrast; draw again.
    Point p = space.first_point();
    const int first = model.predict(p);
    bool varies = false;
    while (!varies && space.next_point(p)) varies = model.predict(p) != first;
    if (varies) return model;
  }
}

Point random_point(Rng& rng, const FeatureSpace& space) {
  Point p;
  for (const auto& f : space.features()) {
    p.push_back(std::uniform_int_distribution<int>(f.domain.lo, f.domain.hi)(rng));
  }
  return p;
}

ConstraintSet random_constraints(Rng& rng, const FeatureSpace& space, const Point& keep) {
  ConstraintSet cs;
  const int n = 1 + static_cast<int>(rng() % 2);
  while (static_cast<int>(cs.clauses.size()) < n) {
    ValueClause c;
    for (int k = 0; k < 2; ++k) {
      const int f = 1 + static_cast<int>(rng() % space.num_features());
      const Domain& d = space.domain(f);
      c.push_back({f, std::uniform_int_distribution<int>(d.lo, d.hi)(rng), rng() % 2 == 0});
    }
    const bool ok = std::any_of(c.begin(), c.end(), [&](const ValueLiteral& l) { return l.holds(keep); });
    if (ok) cs.clauses.push_back(c);
  }
  return cs;
}

namespace naive {

namespace {

template <class F>
void for_each_point(const FeatureSpace& space, F&& f) {
  const int m = space.num_features();
  Point p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[i] = space.domain(i + 1).lo;
  for (;;) {
    f(p);
    int i = m - 1;
    while (i >= 0 && p[i] == space.domain(i + 1).hi) {
      p[i] = space.domain(i + 1).lo;
      --i;
    }
    if (i < 0) return;
    ++p[i];
  }
}

SetCollection minimal(const std::function<bool(const FeatureSet&)>& pred, int m) {
  SetCollection out;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    const FeatureSet s = subset_from_mask(mask, m);
    if (!pred(s)) continue;
    bool is_min = true;
    for (int i : s) is_min = is_min && !pred(without(s, i));
    if (is_min) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool has_counterexample(const Model& model, const Instance& inst, const FeatureSet& fixed,
                        const ConstraintSet* constraints, int epsilon) {
  bool found = false;
  for_each_point(model.space(), [&](const Point& x) {
    if (found) return;
    int dist = 0;
    for (std::size_t i = 0; i < x.size(); ++i) dist += x[i] != inst.point[i];
    if (epsilon >= 0 && dist > epsilon) return;
    for (int i : fixed) {
      if (x[i - 1] != inst.point[i - 1]) return;
    }
    if (constraints && !constraints->allows(x)) return;
    if (model.predict(x) != inst.klass) found = true;
  });
  return found;
}

bool weak_axp(const Model& model, const Instance& inst, const FeatureSet& s,
              const ConstraintSet* constraints, int epsilon) {
  return !has_counterexample(model, inst, s, constraints, epsilon);
}

bool weak_cxp(const Model& model, const Instance& inst, const FeatureSet& s,
              const ConstraintSet* constraints, int epsilon) {
  return has_counterexample(model, inst, set_difference(model.space().all_features(), s),
                            constraints, epsilon);
}

SetCollection all_axps(const Model& model, const Instance& inst, const ConstraintSet* constraints,
                       int epsilon) {
  return minimal([&](const FeatureSet& s) { return weak_axp(model, inst, s, constraints, epsilon); },
                 model.space().num_features());
}

SetCollection all_cxps(const Model& model, const Instance& inst, const ConstraintSet* constraints,
                       int epsilon) {
  return minimal([&](const FeatureSet& s) { return weak_cxp(model, inst, s, constraints, epsilon); },
                 model.space().num_features());
}

std::pair<long, long> slice_counts(const Model& model, const Instance& inst, const FeatureSet& fixed) {
  long fav = 0, total = 0;
  for_each_point(model.space(), [&](const Point& x) {
    for (int i : fixed) {
      if (x[i - 1] != inst.point[i - 1]) return;
    }
    ++total;
    fav += model.predict(x) == inst.klass;
  });
  return {fav, total};
}

}  // namespace naive

FeatureSet without(const FeatureSet& s, int x) {
  FeatureSet out;
  for (int y : s) {
    if (y != x) out.push_back(y);
  }
  return out;
}

FeatureSet subset_from_mask(unsigned mask, int m) {
  FeatureSet s;
  for (int i = 0; i < m; ++i) {
    if (mask >> i & 1u) s.push_back(i + 1);
  }
  return s;
}

}  // namespace xpkit::test
