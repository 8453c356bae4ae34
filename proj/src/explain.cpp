#include "xpkit/explain.hpp"

#include <algorithm>
#include <set>

#include "xpkit/encodings.hpp"
#include "xpkit/error.hpp"
#include "xpkit/soft.hpp"
#include "xpkit/tractable.hpp"

namespace xpkit {

const char* to_string(XpKind kind) {
  switch (kind) {
    case XpKind::AXp: return "axp";
    case XpKind::CXp: return "cxp";
    case XpKind::WeakAXp: return "weak-axp";
    case XpKind::WeakCXp: return "weak-cxp";
    case XpKind::PAXp: return "paxp";
  }
  return "?";
}

std::vector<int> resolve_order(const std::vector<int>& order, const FeatureSet& universe,
                               int num_features) {
  std::vector<int> out;
  std::vector<char> seen(static_cast<std::size_t>(num_features) + 1, 0);
  for (int i : order) {
    if (i < 1 || i > num_features) {
      fail(ErrorKind::Contract, "order names unknown feature " + std::to_string(i));
    }
    if (seen[i]) fail(ErrorKind::Contract, "order repeats feature " + std::to_string(i));
    seen[i] = 1;
    if (contains(universe, i)) out.push_back(i);
  }
  for (int i : universe) {
    if (!seen[i]) out.push_back(i);
  }
  return out;
}

std::string to_string(const ValueTerm& term) {
  if (term.empty()) return "true";
  std::string out;
  for (std::size_t k = 0; k < term.size(); ++k) {
    if (k) out += " ∧ ";
    out += "(x" + std::to_string(term[k].first) + "=" + std::to_string(term[k].second) + ")";
  }
  return out;
}

namespace {

using CexFn = std::function<std::optional<Point>(const FeatureSet&)>;

bool weak(const CexFn& cex, int m, XpKind kind, const FeatureSet& s) {
  if (kind == XpKind::AXp) return !cex(s).has_value();
  FeatureSet all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[i] = i + 1;
  return cex(set_difference(all, s)).has_value();
}

// Deletion pass; `s` must already satisfy the weak predicate.
FeatureSet shrink(const CexFn& cex, int m, XpKind kind, FeatureSet s, const std::vector<int>& order,
                  std::vector<TraceStep>* trace) {
  for (int i : order) {
    FeatureSet rest = s;
    rest.erase(std::find(rest.begin(), rest.end(), i));
    const bool drop = weak(cex, m, kind, rest);
    if (drop) s = std::move(rest);
    if (trace) trace->push_back({i, !drop});
  }
  return s;
}

std::string blocking_clause(const FeatureSet& s, bool negated) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += " ∨ ";
    out += std::string(negated ? "¬" : "") + "u" + std::to_string(s[k]);
  }
  return out + ")";
}

std::vector<EnumerationStep> enumerate_core(int m, const CexFn& cex,
                                            const EnumerateOptions& opts,
                                            const std::function<bool(const EnumerationStep&)>& emit) {
  std::vector<int> descending;
  for (int i = m; i >= 1; --i) descending.push_back(i);
  sat::Picker picker(descending, !opts.invert_polarity);
  std::vector<EnumerationStep> steps;
  FeatureSet all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[i] = i + 1;
  while (!opts.limit || steps.size() < *opts.limit) {
    auto free_set = picker.pick();
    if (!free_set) break;
    EnumerationStep step;
    step.iteration = static_cast<int>(steps.size()) + 1;
    step.universal.assign(static_cast<std::size_t>(m), 0);
    for (int i : *free_set) step.universal[i - 1] = 1;
    const FeatureSet fixed = set_difference(all, *free_set);
    if (!cex(fixed)) {
      FeatureSet order_set = fixed;
      std::vector<int> order(order_set.rbegin(), order_set.rend());
      FeatureSet axp = shrink(cex, m, XpKind::AXp, fixed, order, nullptr);
      step.result = {XpKind::AXp, axp, std::nullopt};
      step.blocking_clause = blocking_clause(axp, false);
      picker.require_some_true(axp);
    } else {
      std::vector<int> order(free_set->rbegin(), free_set->rend());
      FeatureSet cxp = shrink(cex, m, XpKind::CXp, *free_set, order, nullptr);
      step.result = {XpKind::CXp, cxp, std::nullopt};
      step.blocking_clause = blocking_clause(cxp, true);
      picker.require_some_false(cxp);
    }
    steps.push_back(step);
    if (emit && !emit(steps.back())) break;
  }
  return steps;
}

CexFn context_cex(ExplainContext& ctx) {
  return [&ctx](const FeatureSet& fixed) { return ctx.counterexample(fixed); };
}

}  // namespace

Explanation find_one_xp(ExplainContext& ctx, XpKind kind, const std::optional<FeatureSet>& seed,
                        const std::vector<int>& order, std::vector<TraceStep>* trace) {
  if (kind != XpKind::AXp && kind != XpKind::CXp) {
    fail(ErrorKind::Contract, "find_one_xp computes AXp or CXp");
  }
  const int m = ctx.num_features();
  FeatureSet s = seed ? normalize(*seed) : ctx.model().space().all_features();
  for (int i : s) ctx.model().space().feature(i);
  if (!ctx.predicate(kind, s)) {
    fail(ErrorKind::Contract, std::string("seed is not a weak ") +
                                  (kind == XpKind::AXp ? "AXp" : "CXp"));
  }
  const CexFn cex = context_cex(ctx);
  s = shrink(cex, m, kind, s, resolve_order(order, s, m), trace);
  return {kind, s, std::nullopt};
}

Explanation smallest_axp(ExplainContext& ctx) {
  SetCollection to_hit;
  const Point& v = ctx.instance().point;
  for (;;) {
    const FeatureSet h = minimum_hitting_set(to_hit);
    const auto w = ctx.counterexample(h);
    if (!w) return {XpKind::AXp, h, std::nullopt};
    FeatureSet diff;
    for (int i = 1; i <= ctx.num_features(); ++i) {
      if ((*w)[i - 1] != v[i - 1]) diff.push_back(i);
    }
    if (diff.empty()) fail(ErrorKind::Model, "oracle returned the instance itself as a counterexample");
    to_hit.push_back(std::move(diff));
  }
}

std::vector<EnumerationStep> enumerate_xps(ExplainContext& ctx, const EnumerateOptions& opts,
                                           const std::function<bool(const EnumerationStep&)>& emit) {
  return enumerate_core(ctx.num_features(), context_cex(ctx), opts, emit);
}

Membership feature_membership(ExplainContext& ctx, int feature) {
  ctx.model().space().feature(feature);
  Membership out;
  if (ctx.backend() == Backend::DtNative) {
    const auto* dt = ctx.model().as<DecisionTree>();
    for (auto& c : dt_all_cxps(*dt, ctx.model().space(), ctx.instance())) {
      if (contains(c.features, feature)) {
        out.member = true;
        out.witness = std::move(c);
        break;
      }
    }
    return out;
  }
  enumerate_xps(ctx, {}, [&](const EnumerationStep& step) {
    if (contains(step.result.features, feature)) {
      out.member = true;
      out.witness = step.result;
      return false;
    }
    return true;
  });
  return out;
}

GlobalExplanations global_axps_and_counterexamples(const Model& model, int klass,
                                                   const brute::SpaceGuard& guard) {
  const FeatureSpace& space = model.space();
  require_valid(model);
  if (klass < 0 || klass >= space.num_classes()) fail(ErrorKind::Domain, "class index out of range");
  const std::size_t n = space.point_count_within(guard.max_points);
  std::vector<int> binary(n);
  Point p = space.first_point();
  for (std::size_t idx = 0; idx < n; ++idx, space.next_point(p)) {
    binary[idx] = model.predict(p) == klass ? 1 : 0;
  }
  GlobalExplanations out;
  const bool any_c = std::count(binary.begin(), binary.end(), 1) > 0;
  const bool any_other = std::count(binary.begin(), binary.end(), 0) > 0;
  if (!any_other) out.axps.push_back({});
  if (!any_c) out.counterexamples.push_back({});
  if (!any_c || !any_other) return out;

  const FeatureSpace bspace(space.features(), {"0", "1"}, true);
  // One solver per binary class: its hard part holds the points of the
  // other class, so any point of this class can be queried by assumptions.
  struct Side {
    std::optional<Encoding> enc;
    std::optional<sat::Solver> solver;
  };
  Side sides[2];
  for (int b = 0; b < 2; ++b) {
    const auto it = std::find(binary.begin(), binary.end(), b);
    const Instance rep{space.point_at(static_cast<std::size_t>(it - binary.begin())), b};
    sides[b].enc.emplace(encode_table(binary, bspace, rep));
    sides[b].solver.emplace(sides[b].enc->hard);
  }
  std::set<ValueTerm> axps, cexs;
  p = space.first_point();
  for (std::size_t idx = 0; idx < n; ++idx, space.next_point(p)) {
    Side& side = sides[binary[idx]];
    const Point here = p;
    CexFn cex = [&](const FeatureSet& fixed) -> std::optional<Point> {
      std::vector<sat::Lit> assumptions;
      for (int i : fixed) assumptions.push_back(side.enc->layer.eq(i, here[i - 1]));
      const auto r = side.solver->solve(assumptions);
      if (!r.sat) return std::nullopt;
      return side.enc->layer.decode(r.model);
    };
    for (const auto& step : enumerate_core(space.num_features(), cex, {}, {})) {
      if (step.result.kind != XpKind::AXp) continue;
      ValueTerm term;
      for (int i : step.result.features) term.emplace_back(i, here[i - 1]);
      (binary[idx] ? axps : cexs).insert(std::move(term));
    }
  }
  auto by_size = [](const ValueTerm& a, const ValueTerm& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  out.axps.assign(axps.begin(), axps.end());
  out.counterexamples.assign(cexs.begin(), cexs.end());
  std::sort(out.axps.begin(), out.axps.end(), by_size);
  std::sort(out.counterexamples.begin(), out.counterexamples.end(), by_size);
  return out;
}

}  // namespace xpkit
