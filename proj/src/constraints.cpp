#include "xpkit/constraints.hpp"

#include <algorithm>

#include "xpkit/error.hpp"

namespace xpkit {

bool ConstraintSet::allows(const Point& p) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const ValueClause& c) {
    return std::any_of(c.begin(), c.end(), [&](const ValueLiteral& l) { return l.holds(p); });
  });
}

void ConstraintSet::check(const FeatureSpace& space) const {
  for (const auto& c : clauses) {
    for (const auto& l : c) {
      if (!space.domain(l.feature).contains(l.value)) {
        fail(ErrorKind::Domain, "constraint value " + std::to_string(l.value) +
                                    " outside the domain of feature " + std::to_string(l.feature));
      }
    }
  }
}

bool ConstraintSet::is_horn() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ValueClause& c) {
    return std::count_if(c.begin(), c.end(), [](const ValueLiteral& l) { return !l.negated; }) <= 1;
  });
}

std::string to_string(const ValueClause& clause) {
  std::string out = "(";
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i) out += " ∨ ";
    out += "x" + std::to_string(clause[i].feature) + (clause[i].negated ? "≠" : "=") +
           std::to_string(clause[i].value);
  }
  return out + ")";
}

}  // namespace xpkit
