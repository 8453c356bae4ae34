#include "report.hpp"

namespace xpkit::report {

namespace {

std::string conjunction(const FeatureSet& s, const Point& v) {
  ValueTerm t;
  for (int i : s) t.emplace_back(i, v[i - 1]);
  return to_string(t);
}

ordered_json sets(const SetCollection& c) {
  ordered_json out = ordered_json::array();
  for (const auto& s : c) out.push_back(s);
  return out;
}

ordered_json term_json(const ValueTerm& t, const std::string& then) {
  ordered_json lits = ordered_json::array();
  for (const auto& [f, v] : t) lits.push_back({{"f", f}, {"op", "="}, {"v", v}});
  return {{"literals", lits}, {"rule", "IF " + to_string(t) + " THEN " + then}};
}

}  // namespace

ordered_json class_label(const FeatureSpace& space, int klass) {
  const std::string& label = space.class_label(klass);
  if (space.numeric_classes()) return std::stoll(label);
  return label;
}

std::string rule_text(const FeatureSpace& space, const Instance& inst, const Explanation& e) {
  const std::string c = space.class_label(inst.klass);
  const std::string body = conjunction(e.features, inst.point);
  if (e.kind == XpKind::CXp || e.kind == XpKind::WeakCXp) {
    const std::string negated = e.features.size() > 1 ? "(" + body + ")" : body;
    return "IF NOT " + negated + " THEN POSSIBLY NOT " + c;
  }
  return "IF " + body + " THEN " + c;
}

ordered_json explanation(const FeatureSpace& space, const Instance& inst, const Explanation& e) {
  ordered_json lits = ordered_json::array();
  for (int i : e.features) lits.push_back({{"f", i}, {"op", "="}, {"v", inst.point[i - 1]}});
  ordered_json out = {{"kind", to_string(e.kind)},
                      {"features", e.features},
                      {"literals", lits},
                      {"rule", rule_text(space, inst, e)}};
  if (e.probability) {
    out["probability_reduced"] = to_fraction_string(*e.probability);
    out["probability_decimal"] = to_decimal_string(*e.probability);
  }
  return out;
}

ordered_json trace(const std::vector<TraceStep>& steps) {
  ordered_json out = ordered_json::array();
  for (const auto& s : steps) out.push_back({{"feature", s.feature}, {"kept", s.kept}});
  return out;
}

ordered_json enumeration(const FeatureSpace& space, const Instance& inst,
                         const std::vector<EnumerationStep>& steps) {
  ordered_json axps = ordered_json::array(), cxps = ordered_json::array(),
               rows = ordered_json::array(), all = ordered_json::array();
  for (const auto& s : steps) {
    FeatureSet fixed;
    for (std::size_t k = 0; k < s.universal.size(); ++k) {
      if (!s.universal[k]) fixed.push_back(static_cast<int>(k) + 1);
    }
    (s.result.kind == XpKind::AXp ? axps : cxps).push_back(s.result.features);
    all.push_back(explanation(space, inst, s.result));
    rows.push_back({{"iteration", s.iteration},
                    {"u", s.universal},
                    {"fixed", fixed},
                    {"kind", to_string(s.result.kind)},
                    {"features", s.result.features},
                    {"blocking_clause", s.blocking_clause}});
  }
  return {{"axps", axps}, {"cxps", cxps}, {"explanations", all}, {"trace", rows}};
}

ordered_json membership(const FeatureSpace& space, const Instance& inst, int feature,
                        const Membership& m) {
  ordered_json out = {{"feature", feature}, {"member", m.member}};
  out["witness"] = m.witness ? explanation(space, inst, *m.witness) : ordered_json(nullptr);
  return out;
}

ordered_json global(const FeatureSpace& space, int klass, const GlobalExplanations& g) {
  const std::string c = space.class_label(klass);
  ordered_json axps = ordered_json::array(), cexs = ordered_json::array();
  for (const auto& t : g.axps) axps.push_back(term_json(t, c));
  for (const auto& t : g.counterexamples) cexs.push_back(term_json(t, "NOT " + c));
  return {{"class", class_label(space, klass)}, {"global_axps", axps}, {"counterexamples", cexs}};
}

ordered_json validation(const ValidationReport& r) {
  return {{"ok", r.ok()}, {"violations", r.violations}};
}

ordered_json paxp(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst,
                  const Rational& delta, const Explanation& e) {
  const ProbabilityCounts counts = probability_counts(dt, space, inst, e.features);
  ordered_json rows = ordered_json::array();
  for (const auto& pc : path_counts(dt, space, inst, e.features)) {
    rows.push_back({{"path", pc.nodes},
                    {"class", class_label(space, pc.klass)},
                    {"count", pc.count.str()}});
  }
  ordered_json out = explanation(space, inst, e);
  out["delta"] = to_fraction_string(delta);
  out["probability"] = counts.unreduced();
  out["probability_reduced"] = to_fraction_string(counts.value());
  out["probability_decimal"] = to_decimal_string(counts.value());
  out["path_counts"] = rows;
  return out;
}

ordered_json crosscheck(const CrosscheckReport& r) {
  ordered_json routes = ordered_json::array(), checks = ordered_json::array();
  for (const auto& route : r.routes) {
    const bool same = route.axps == r.routes.front().axps && route.cxps == r.routes.front().cxps;
    routes.push_back(
        {{"route", route.route}, {"agrees", same}, {"axps", sets(route.axps)}, {"cxps", sets(route.cxps)}});
  }
  for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"ok", c.ok}});
  return {{"agree", r.agree()}, {"routes", routes}, {"checks", checks}};
}

ordered_json error(const char* kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace xpkit::report
