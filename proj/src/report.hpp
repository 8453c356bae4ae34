#pragma once

// JSON documents shared by the C API and, through it, the CLI.

#include <json.hpp>

#include "xpkit/crosscheck.hpp"
#include "xpkit/dimacs.hpp"
#include "xpkit/explain.hpp"
#include "xpkit/prob.hpp"

namespace xpkit::report {

using nlohmann::ordered_json;

ordered_json class_label(const FeatureSpace& space, int klass);

/// "IF (x3=1) ∧ (x5=1) THEN 1" for AXp's and PAXp's; CXp's read
/// "IF NOT ((x3=1) ∧ (x5=1)) THEN POSSIBLY NOT 1" with the other features fixed.
std::string rule_text(const FeatureSpace& space, const Instance& inst, const Explanation& e);

ordered_json explanation(const FeatureSpace& space, const Instance& inst, const Explanation& e);

ordered_json trace(const std::vector<TraceStep>& steps);

ordered_json enumeration(const FeatureSpace& space, const Instance& inst,
                         const std::vector<EnumerationStep>& steps);

ordered_json membership(const FeatureSpace& space, const Instance& inst, int feature,
                        const Membership& m);

ordered_json global(const FeatureSpace& space, int klass, const GlobalExplanations& g);

ordered_json validation(const ValidationReport& r);

ordered_json paxp(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst,
                  const Rational& delta, const Explanation& e);

ordered_json crosscheck(const CrosscheckReport& r);

ordered_json error(const char* kind, const std::string& message);

}  // namespace xpkit::report
