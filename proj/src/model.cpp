#include "xpkit/model.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "xpkit/error.hpp"

namespace xpkit {

ValueSet Domain::values() const {
  ValueSet out;
  for (Value v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

FeatureSpace::FeatureSpace(std::vector<Feature> features, std::vector<std::string> classes,
                           bool numeric_classes)
    : features_(std::move(features)),
      classes_(std::move(classes)),
      numeric_classes_(numeric_classes) {
  if (features_.empty()) fail(ErrorKind::Model, "feature space needs at least one feature");
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const Feature& f = features_[i];
    if (f.id != static_cast<int>(i) + 1) {
      fail(ErrorKind::Model, "feature ids must be 1..m in order; got " + std::to_string(f.id) +
                                 " at position " + std::to_string(i + 1));
    }
    if (f.domain.lo > f.domain.hi) {
      fail(ErrorKind::Model, "empty domain for feature " + std::to_string(f.id));
    }
    if (f.domain.boolean && (f.domain.lo != 0 || f.domain.hi != 1)) {
      fail(ErrorKind::Model, "boolean domain must be {0,1}");
    }
  }
  if (classes_.size() < 2) fail(ErrorKind::Model, "at least two classes are required");
  std::set<std::string> seen(classes_.begin(), classes_.end());
  if (seen.size() != classes_.size()) fail(ErrorKind::Model, "duplicate class label");
}

const Feature& FeatureSpace::feature(int id) const {
  if (id < 1 || id > num_features()) {
    fail(ErrorKind::Domain, "unknown feature id " + std::to_string(id));
  }
  return features_[id - 1];
}

const std::string& FeatureSpace::class_label(int k) const {
  if (k < 0 || k >= num_classes()) fail(ErrorKind::Domain, "class index out of range");
  return classes_[k];
}

std::optional<int> FeatureSpace::find_class(std::string_view label) const {
  for (int k = 0; k < num_classes(); ++k) {
    if (classes_[k] == label) return k;
  }
  return std::nullopt;
}

int FeatureSpace::class_index(std::string_view label) const {
  auto k = find_class(label);
  if (!k) fail(ErrorKind::Domain, "unknown class '" + std::string(label) + "'");
  return *k;
}

FeatureSet FeatureSpace::all_features() const {
  FeatureSet all(features_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i) + 1;
  return all;
}

BigInt FeatureSpace::point_count() const {
  BigInt n = 1;
  for (const auto& f : features_) n *= f.domain.size();
  return n;
}

std::size_t FeatureSpace::point_count_within(std::size_t limit) const {
  BigInt n = point_count();
  if (n > limit) {
    std::ostringstream os;
    os << "feature space has " << n << " points, above the limit of " << limit;
    fail(ErrorKind::Resource, os.str());
  }
  return n.convert_to<std::size_t>();
}

bool FeatureSpace::contains(const Point& p) const {
  if (p.size() != features_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!features_[i].domain.contains(p[i])) return false;
  }
  return true;
}

void FeatureSpace::check_point(const Point& p) const {
  if (p.size() != features_.size()) {
    fail(ErrorKind::Domain, "point has " + std::to_string(p.size()) + " values, expected " +
                                std::to_string(features_.size()));
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!features_[i].domain.contains(p[i])) {
      fail(ErrorKind::Domain, "value " + std::to_string(p[i]) + " outside the domain of feature " +
                                  std::to_string(i + 1));
    }
  }
}

std::size_t FeatureSpace::index_of(const Point& p) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    idx = idx * features_[i].domain.size() + (p[i] - features_[i].domain.lo);
  }
  return idx;
}

Point FeatureSpace::point_at(std::size_t index) const {
  Point p(features_.size());
  for (std::size_t i = features_.size(); i-- > 0;) {
    const Domain& d = features_[i].domain;
    p[i] = d.lo + static_cast<Value>(index % d.size());
    index /= d.size();
  }
  return p;
}

Point FeatureSpace::first_point() const {
  Point p(features_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = features_[i].domain.lo;
  return p;
}

bool FeatureSpace::next_point(Point& p) const {
  for (std::size_t i = features_.size(); i-- > 0;) {
    if (p[i] < features_[i].domain.hi) {
      ++p[i];
      return true;
    }
    p[i] = features_[i].domain.lo;
  }
  return false;
}

std::string FeatureSpace::feature_label(int id) const { return "x" + std::to_string(id); }

bool Literal::holds(const Point& p) const {
  return std::binary_search(values.begin(), values.end(), p[feature - 1]);
}

bool term_holds(const Term& t, const Point& p) {
  return std::all_of(t.begin(), t.end(), [&](const Literal& l) { return l.holds(p); });
}

const Literal* TreePath::literal_for(int feature) const {
  for (const auto& l : literals) {
    if (l.feature == feature) return &l;
  }
  return nullptr;
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, int root)
    : nodes_(std::move(nodes)), root_(root) {
  int max_id = 0;
  for (const auto& n : nodes_) {
    if (n.id < 1) fail(ErrorKind::Model, "tree node ids must be positive");
    max_id = std::max(max_id, n.id);
  }
  index_.assign(max_id + 1, -1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (index_[nodes_[i].id] != -1) {
      fail(ErrorKind::Model, "duplicate tree node id " + std::to_string(nodes_[i].id));
    }
    index_[nodes_[i].id] = static_cast<int>(i);
  }
  if (!has_node(root_)) fail(ErrorKind::Model, "tree root " + std::to_string(root_) + " missing");
}

bool DecisionTree::has_node(int id) const {
  return id >= 0 && id < static_cast<int>(index_.size()) && index_[id] != -1;
}

const TreeNode& DecisionTree::node(int id) const {
  if (!has_node(id)) fail(ErrorKind::Model, "unknown tree node " + std::to_string(id));
  return nodes_[index_[id]];
}

std::vector<TreePath> DecisionTree::paths() const {
  std::vector<TreePath> out;
  std::vector<int> stack_nodes;
  std::vector<Literal> lits;  // one entry per (node, edge) on the current path

  std::function<void(int)> walk = [&](int id) {
    if (stack_nodes.size() > nodes_.size()) fail(ErrorKind::Model, "decision tree has a cycle");
    const TreeNode& n = node(id);
    stack_nodes.push_back(id);
    if (n.terminal()) {
      TreePath path;
      path.nodes = stack_nodes;
      path.klass = *n.klass;
      for (const auto& l : lits) {
        auto it = std::find_if(path.literals.begin(), path.literals.end(),
                               [&](const Literal& x) { return x.feature == l.feature; });
        if (it == path.literals.end()) {
          path.literals.push_back(l);
        } else {
          ValueSet both;
          std::set_intersection(it->values.begin(), it->values.end(), l.values.begin(),
                                l.values.end(), std::back_inserter(both));
          it->values = std::move(both);
        }
      }
      std::sort(path.literals.begin(), path.literals.end(),
                [](const Literal& a, const Literal& b) { return a.feature < b.feature; });
      out.push_back(std::move(path));
    } else {
      for (const auto& e : n.edges) {
        lits.push_back(Literal{n.feature, e.values});
        walk(e.child);
        lits.pop_back();
      }
    }
    stack_nodes.pop_back();
  };
  walk(root_);
  return out;
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::DecisionTree:
      return "dt";
    case ModelKind::DecisionList:
      return "dl";
    case ModelKind::DecisionSet:
      return "ds";
    case ModelKind::Monotonic:
      return "monotonic";
    case ModelKind::Table:
      return "table";
  }
  return "unknown";
}

Model::Model(FeatureSpace space, Body body, std::string name)
    : space_(std::move(space)), body_(std::move(body)), name_(std::move(name)) {}

ModelKind Model::kind() const {
  return static_cast<ModelKind>(body_.index());
}

namespace {

int tree_predict(const DecisionTree& dt, const Point& p, std::vector<int>* trace) {
  int id = dt.root();
  for (std::size_t steps = 0; steps <= dt.nodes().size(); ++steps) {
    const TreeNode& n = dt.node(id);
    if (trace) trace->push_back(id);
    if (n.terminal()) return *n.klass;
    const TreeEdge* next = nullptr;
    for (const auto& e : n.edges) {
      if (std::binary_search(e.values.begin(), e.values.end(), p[n.feature - 1])) {
        if (next) {
          fail(ErrorKind::Model, "edges of node " + std::to_string(id) + " overlap");
        }
        next = &e;
      }
    }
    if (!next) {
      fail(ErrorKind::Model, "no edge of node " + std::to_string(id) + " matches value " +
                                 std::to_string(p[n.feature - 1]));
    }
    id = next->child;
  }
  fail(ErrorKind::Model, "decision tree has a cycle");
}

}  // namespace

int Model::predict(const Point& p) const {
  space_.check_point(p);
  return std::visit(
      [&](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          return tree_predict(m, p, nullptr);
        } else if constexpr (std::is_same_v<T, DecisionList>) {
          for (const auto& r : m.rules) {
            if (term_holds(r.condition, p)) return r.klass;
          }
          fail(ErrorKind::Model, "no decision list rule fires");
        } else if constexpr (std::is_same_v<T, DecisionSet>) {
          std::optional<int> fired;
          for (const auto& r : m.rules) {
            if (!term_holds(r.condition, p)) continue;
            if (fired && *fired != r.klass) {
              fail(ErrorKind::Model, "decision set overlap at point");
            }
            fired = r.klass;
          }
          if (!fired) fail(ErrorKind::Model, "decision set has no rule for point");
          return *fired;
        } else {
          return m.table.at(space_.index_of(p));
        }
      },
      body_);
}

std::vector<int> consistent_path(const DecisionTree& dt, const FeatureSpace& space,
                                 const Point& p) {
  space.check_point(p);
  std::vector<int> trace;
  tree_predict(dt, p, &trace);
  return trace;
}

namespace {

void check_literal(const FeatureSpace& space, const Literal& l, const std::string& where,
                   std::vector<std::string>& out) {
  if (l.feature < 1 || l.feature > space.num_features()) {
    out.push_back(where + ": unknown feature " + std::to_string(l.feature));
    return;
  }
  const Domain& d = space.domain(l.feature);
  for (Value v : l.values) {
    if (!d.contains(v)) {
      out.push_back(where + ": value " + std::to_string(v) + " outside domain of feature " +
                    std::to_string(l.feature));
    }
  }
  if (!std::is_sorted(l.values.begin(), l.values.end()) ||
      std::adjacent_find(l.values.begin(), l.values.end()) != l.values.end()) {
    out.push_back(where + ": literal values must be sorted and distinct");
  }
}

void check_class(const FeatureSpace& space, int k, const std::string& where,
                 std::vector<std::string>& out) {
  if (k < 0 || k >= space.num_classes()) out.push_back(where + ": unknown class");
}

void validate_tree(const FeatureSpace& space, const DecisionTree& dt,
                   std::vector<std::string>& out) {
  std::vector<int> parents_seen;
  std::map<int, int> parent_count;
  for (const auto& n : dt.nodes()) {
    const std::string where = "node " + std::to_string(n.id);
    if (n.terminal()) {
      check_class(space, *n.klass, where, out);
      if (!n.edges.empty()) out.push_back(where + ": terminal node has edges");
      continue;
    }
    if (n.feature < 1 || n.feature > space.num_features()) {
      out.push_back(where + ": unknown feature " + std::to_string(n.feature));
      continue;
    }
    if (n.edges.empty()) {
      out.push_back(where + ": internal node without edges");
      continue;
    }
    const Domain& d = space.domain(n.feature);
    std::vector<int> hits(d.size(), 0);
    for (const auto& e : n.edges) {
      if (e.values.empty()) out.push_back(where + ": edge with empty value set");
      check_literal(space, Literal{n.feature, e.values}, where, out);
      for (Value v : e.values) {
        if (d.contains(v)) ++hits[v - d.lo];
      }
      if (!dt.has_node(e.child)) {
        out.push_back(where + ": edge to missing node " + std::to_string(e.child));
      } else {
        ++parent_count[e.child];
      }
    }
    bool overlap = false, gap = false;
    for (int h : hits) {
      overlap |= h > 1;
      gap |= h == 0;
    }
    if (overlap) out.push_back(where + ": edges not disjoint");
    if (gap) out.push_back(where + ": edges not exhaustive");
  }
  if (parent_count.count(dt.root())) out.push_back("root node has a parent");
  for (const auto& [id, count] : parent_count) {
    if (count > 1) out.push_back("node " + std::to_string(id) + " has several parents");
  }
  // Reachability and acyclicity.
  std::set<int> seen;
  std::vector<int> stack{dt.root()};
  bool cyclic = false;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) {
      cyclic = true;
      continue;
    }
    for (const auto& e : dt.node(id).edges) {
      if (dt.has_node(e.child)) stack.push_back(e.child);
    }
  }
  if (cyclic) out.push_back("decision tree is not acyclic");
  for (const auto& n : dt.nodes()) {
    if (!seen.count(n.id)) out.push_back("node " + std::to_string(n.id) + " unreachable from root");
  }
}

void validate_table(const FeatureSpace& space, const std::vector<int>& table,
                    std::vector<std::string>& out) {
  BigInt expected = space.point_count();
  if (BigInt(table.size()) != expected) {
    out.push_back("table has " + std::to_string(table.size()) + " entries, expected " +
                  expected.str());
    return;
  }
  for (int k : table) {
    if (k < 0 || k >= space.num_classes()) {
      out.push_back("table entry with unknown class");
      return;
    }
  }
  if (std::adjacent_find(table.begin(), table.end(), std::not_equal_to<>()) == table.end()) {
    out.push_back("classifier is constant");
  }
}

void validate_monotone(const FeatureSpace& space, const std::vector<int>& table,
                       std::vector<std::string>& out) {
  // Checking unit steps suffices: the pointwise order is their transitive closure.
  const int m = space.num_features();
  Point p = space.first_point();
  do {
    const int here = table[space.index_of(p)];
    for (int i = 0; i < m; ++i) {
      if (p[i] >= space.features()[i].domain.hi) continue;
      ++p[i];
      const int up = table[space.index_of(p)];
      --p[i];
      if (up < here) {
        std::ostringstream os;
        os << "not monotone: raising feature " << (i + 1) << " lowers the class at (";
        for (int j = 0; j < m; ++j) os << (j ? "," : "") << p[j];
        os << ")";
        out.push_back(os.str());
        return;
      }
    }
  } while (space.next_point(p));
}

}  // namespace

ValidationReport validate_model(const Model& model) {
  ValidationReport report;
  auto& out = report.violations;
  const FeatureSpace& space = model.space();
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          validate_tree(space, m, out);
        } else if constexpr (std::is_same_v<T, DecisionList>) {
          if (m.rules.empty()) {
            out.push_back("decision list has no rules");
            return;
          }
          if (!m.rules.back().condition.empty()) {
            out.push_back("last decision list rule must have an empty condition");
          }
          for (std::size_t j = 0; j < m.rules.size(); ++j) {
            const std::string where = "rule " + std::to_string(j + 1);
            check_class(space, m.rules[j].klass, where, out);
            for (const auto& l : m.rules[j].condition) check_literal(space, l, where, out);
          }
        } else if constexpr (std::is_same_v<T, DecisionSet>) {
          if (m.rules.empty()) out.push_back("decision set has no rules");
          for (std::size_t j = 0; j < m.rules.size(); ++j) {
            const std::string where = "rule " + std::to_string(j + 1);
            check_class(space, m.rules[j].klass, where, out);
            for (const auto& l : m.rules[j].condition) check_literal(space, l, where, out);
          }
        } else if constexpr (std::is_same_v<T, MonotonicClassifier>) {
          validate_table(space, m.table, out);
          if (out.empty()) validate_monotone(space, m.table, out);
        } else {
          validate_table(space, m.table, out);
        }
      },
      model.body());
  return report;
}

void require_valid(const Model& model) {
  auto report = validate_model(model);
  if (report.ok()) return;
  std::string msg = "invalid model:";
  for (const auto& v : report.violations) msg += " " + v + ";";
  fail(ErrorKind::Model, msg);
}

Instance bind_instance(const Model& model, Point point, int klass) {
  const int predicted = model.predict(point);
  if (predicted != klass) {
    fail(ErrorKind::Contract, "instance class '" + model.space().class_label(klass) +
                                  "' differs from the prediction '" +
                                  model.space().class_label(predicted) + "'");
  }
  return Instance{std::move(point), klass};
}

Instance predicted_instance(const Model& model, Point point) {
  const int k = model.predict(point);
  return Instance{std::move(point), k};
}

FeatureSet normalize(FeatureSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

FeatureSet set_difference(const FeatureSet& a, const FeatureSet& b) {
  FeatureSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FeatureSet set_intersection(const FeatureSet& a, const FeatureSet& b) {
  FeatureSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FeatureSet set_union(const FeatureSet& a, const FeatureSet& b) {
  FeatureSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const FeatureSet& a, const FeatureSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains(const FeatureSet& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

std::string to_string(const FeatureSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace xpkit
