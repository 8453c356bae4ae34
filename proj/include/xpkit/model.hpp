#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xpkit/rational.hpp"

namespace xpkit {

using Value = int;

/// A point of feature space; entry i-1 holds the value of feature i.
using Point = std::vector<Value>;

/// Sorted, duplicate-free list of 1-based feature ids.
using FeatureSet = std::vector<int>;

/// Sorted, duplicate-free list of domain values.
using ValueSet = std::vector<Value>;

/// Finite feature domain: either boolean ({0,1}) or a contiguous integer range.
struct Domain {
  Value lo = 0;
  Value hi = 1;
  bool boolean = false;

  static Domain Bool() { return Domain{0, 1, true}; }
  static Domain Range(Value lo, Value hi) { return Domain{lo, hi, false}; }

  int size() const { return hi - lo + 1; }
  bool contains(Value v) const { return v >= lo && v <= hi; }
  ValueSet values() const;
};

struct Feature {
  int id = 0;
  std::string name;
  Domain domain;
};

/// Features 1..m with their domains, plus the class set K. Classes are kept
/// in declaration order; for monotonic classifiers that order is the chain
/// c_1 < ... < c_K.
class FeatureSpace {
 public:
  FeatureSpace(std::vector<Feature> features, std::vector<std::string> classes,
               bool numeric_classes = true);

  int num_features() const { return static_cast<int>(features_.size()); }
  const std::vector<Feature>& features() const { return features_; }
  const Feature& feature(int id) const;
  const Domain& domain(int id) const { return feature(id).domain; }

  int num_classes() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::string& class_label(int k) const;
  std::optional<int> find_class(std::string_view label) const;
  int class_index(std::string_view label) const;
  bool numeric_classes() const { return numeric_classes_; }

  FeatureSet all_features() const;

  /// |F| as an exact integer.
  BigInt point_count() const;
  /// |F| as a machine integer; throws Resource if it exceeds `limit`.
  std::size_t point_count_within(std::size_t limit) const;

  bool contains(const Point& p) const;
  /// Throws Domain on wrong arity or out-of-domain values.
  void check_point(const Point& p) const;

  /// Odometer order: feature 1 varies slowest, feature m fastest.
  std::size_t index_of(const Point& p) const;
  Point point_at(std::size_t index) const;
  Point first_point() const;
  /// Advances `p` in odometer order; returns false after the last point.
  bool next_point(Point& p) const;

  std::string feature_label(int id) const;

 private:
  std::vector<Feature> features_;
  std::vector<std::string> classes_;
  bool numeric_classes_;
};

/// Set-membership literal x_i in values.
struct Literal {
  int feature = 0;
  ValueSet values;

  bool holds(const Point& p) const;
};

using Term = std::vector<Literal>;

bool term_holds(const Term& t, const Point& p);

struct Rule {
  Term condition;  // empty condition is a tautology
  int klass = 0;
};

struct TreeEdge {
  ValueSet values;
  int child = 0;
};

struct TreeNode {
  int id = 0;
  int feature = 0;               // tested feature for internal nodes
  std::vector<TreeEdge> edges;   // empty for terminals
  std::optional<int> klass;      // set for terminals

  bool terminal() const { return klass.has_value(); }
};

/// A root-to-leaf path with the per-feature intersection of its edge sets.
struct TreePath {
  std::vector<int> nodes;
  int klass = 0;
  std::vector<Literal> literals;  // one per tested feature, sorted by feature

  const Literal* literal_for(int feature) const;
};

class DecisionTree {
 public:
  DecisionTree(std::vector<TreeNode> nodes, int root);

  int root() const { return root_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const;
  bool has_node(int id) const;

  /// All root-to-leaf paths, depth-first with edges in declaration order.
  /// Throws Model if the node graph is cyclic.
  std::vector<TreePath> paths() const;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<int> index_;  // node id -> position, -1 when absent
  int root_;
};

struct DecisionList {
  std::vector<Rule> rules;  // the last rule is the default (empty condition)
};

struct DecisionSet {
  std::vector<Rule> rules;  // unordered
};

/// Class chain is the FeatureSpace class order. Table is in odometer order.
struct MonotonicClassifier {
  std::vector<int> table;
};

struct TabularClassifier {
  std::vector<int> table;
};

enum class ModelKind { DecisionTree, DecisionList, DecisionSet, Monotonic, Table };

const char* to_string(ModelKind kind);

class Model {
 public:
  using Body = std::variant<DecisionTree, DecisionList, DecisionSet,
                            MonotonicClassifier, TabularClassifier>;

  Model(FeatureSpace space, Body body, std::string name = {});

  const FeatureSpace& space() const { return space_; }
  const Body& body() const { return body_; }
  ModelKind kind() const;
  const std::string& name() const { return name_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&body_);
  }

  /// Throws Domain for points outside F and Model for malformed bodies
  /// (a tree node with no matching edge, a decision set that does not fire
  /// exactly one class).
  int predict(const Point& p) const;

 private:
  FeatureSpace space_;
  Body body_;
  std::string name_;
};

/// Unique path consistent with `p`, as a node-id sequence.
std::vector<int> consistent_path(const DecisionTree& dt, const FeatureSpace& space,
                                 const Point& p);

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate_model(const Model& model);

/// Throws Model with the joined violations when validation fails.
void require_valid(const Model& model);

struct Instance {
  Point point;
  int klass = 0;
};

/// Checks the point is in F and that the model predicts `klass` on it.
Instance bind_instance(const Model& model, Point point, int klass);

/// Instance whose class is whatever the model predicts.
Instance predicted_instance(const Model& model, Point point);

// Small set helpers used across modules.
FeatureSet normalize(FeatureSet s);
FeatureSet set_difference(const FeatureSet& a, const FeatureSet& b);
FeatureSet set_intersection(const FeatureSet& a, const FeatureSet& b);
FeatureSet set_union(const FeatureSet& a, const FeatureSet& b);
bool is_subset(const FeatureSet& a, const FeatureSet& b);
bool contains(const FeatureSet& s, int x);
std::string to_string(const FeatureSet& s);

}  // namespace xpkit
