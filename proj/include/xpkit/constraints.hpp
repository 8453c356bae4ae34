#pragma once

#include <string>
#include <vector>

#include "xpkit/model.hpp"

namespace xpkit {

/// (x_i = v) or, when `negated`, (x_i != v).
struct ValueLiteral {
  int feature = 0;
  Value value = 0;
  bool negated = false;

  bool holds(const Point& p) const { return (p[feature - 1] == value) != negated; }
};

using ValueClause = std::vector<ValueLiteral>;

/// Input constraints: a CNF over value literals describing the allowed points.
struct ConstraintSet {
  std::vector<ValueClause> clauses;

  bool empty() const { return clauses.empty(); }
  bool allows(const Point& p) const;
  /// Throws Domain when a literal names an unknown feature or value.
  void check(const FeatureSpace& space) const;
  /// True when every clause has at most one positive (x_i = v) literal.
  bool is_horn() const;
};

std::string to_string(const ValueClause& clause);

}  // namespace xpkit
