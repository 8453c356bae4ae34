#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xpkit/constraints.hpp"
#include "xpkit/model.hpp"
#include "xpkit/sat.hpp"
#include "xpkit/soft.hpp"

namespace xpkit {

/// Propositional view of feature values. Boolean features use one variable
/// (true means value 1); other features use a one-hot group with an
/// exactly-one constraint (at-least-one plus pairwise at-most-one).
class ValueLayer {
 public:
  ValueLayer(const FeatureSpace& space, sat::CnfFormula& f);

  const FeatureSpace& space() const { return space_; }
  bool one_hot(int feature) const { return groups_[feature - 1].size() > 1; }
  /// Variables of the feature (one for booleans, one per value otherwise).
  const std::vector<int>& group(int feature) const { return groups_[feature - 1]; }

  /// Literal meaning x_feature = v.
  sat::Lit eq(int feature, Value v) const;
  /// Literal meaning x_feature in values. Aux variables are shared per
  /// (feature, value set).
  sat::Lit in(sat::CnfFormula& f, int feature, const ValueSet& values);
  sat::Lit in(sat::CnfFormula& f, const Literal& l) { return in(f, l.feature, l.values); }
  /// A variable forced true by a unit clause.
  sat::Lit truth(sat::CnfFormula& f);

  Point decode(const std::vector<bool>& model) const;

  std::map<int, std::string>& names() { return names_; }
  const std::map<int, std::string>& names() const { return names_; }

 private:
  FeatureSpace space_;
  std::vector<std::vector<int>> groups_;
  std::map<std::pair<int, ValueSet>, sat::Lit> shared_;
  std::optional<sat::Lit> truth_;
  std::map<int, std::string> names_;
};

/// Hard clauses whose models are the points x with kappa(x) != c, plus the
/// per-feature literals [x_i = v_i] that fix a feature to the instance.
struct Encoding {
  sat::CnfFormula hard;
  ValueLayer layer;
  Instance instance;

  Encoding(const FeatureSpace& space, Instance inst);

  sat::Lit fixed(int feature) const { return layer.eq(feature, instance.point[feature - 1]); }
  /// Soft units (x_i = v_i), one per feature in id order; labelled "x1=0".
  sat::SoftPartition partition() const;
  /// A term conjunction t <-> AND(lits).
  int define_and(const std::vector<sat::Lit>& lits, const std::string& name);
};

struct DlEncoding {
  Encoding enc;
  std::vector<int> t;          // t[j]: rule j fires (0-based rule index)
  std::map<int, int> flip;     // rule index -> f_j, for rules predicting d != c
};

struct DsEncoding {
  Encoding enc;
  std::vector<std::vector<int>> terms;  // terms[r][j]: j-th term of class r fires
  std::vector<int> pick;                // pick[r]: some term of class r fires
  int predicted = 0;                    // s
};

struct DtHornEncoding {
  sat::SoftPartition partition;     // soft clauses (u_i) in feature order
  std::vector<int> universal;       // u_i variable, index i-1
  std::map<int, int> blocked;       // node id -> b_r variable
  std::vector<std::size_t> counts;  // clause counts for rules B1..B5
};

struct DsCheck {
  std::optional<Point> overlap;
  std::optional<std::pair<int, int>> overlap_classes;
  std::optional<Point> gap;

  bool ok() const { return !overlap && !gap; }
};

DlEncoding encode_dl(const DecisionList& dl, const FeatureSpace& space, const Instance& inst);
DsEncoding encode_ds(const DecisionSet& ds, const FeatureSpace& space, const Instance& inst);
/// Contrast paths: for each path R with class != c, p_R implies the path
/// literals, and some p_R holds.
Encoding encode_dt_paths(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst);
/// Table and monotonic models: a selector per point with class != c.
Encoding encode_table(const std::vector<int>& table, const FeatureSpace& space,
                      const Instance& inst);
/// Dispatches on the model type.
Encoding encode_model(const Model& model, const Instance& inst);

DtHornEncoding encode_dt_horn(const DecisionTree& dt, const FeatureSpace& space,
                              const Instance& inst);

DsCheck check_ds_wellformed(const DecisionSet& ds, const FeatureSpace& space);

/// Adds the constraint clauses over layer literals. Throws Contract when
/// the instance point violates the constraints.
void inject_constraints(Encoding& enc, const ConstraintSet& constraints);

/// Restricts models to points within Hamming distance epsilon of the
/// instance (number of features whose value differs).
void restrict_locality(Encoding& enc, int epsilon);

}  // namespace xpkit
