#include "xpkit/crosscheck.hpp"

#include <algorithm>

#include "xpkit/brute.hpp"
#include "xpkit/encodings.hpp"
#include "xpkit/prob.hpp"
#include "xpkit/soft.hpp"
#include "xpkit/tractable.hpp"

namespace xpkit {

namespace {

SetCollection sorted(SetCollection c) {
  for (auto& s : c) s = normalize(std::move(s));
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

RouteResult from_enumeration(const std::string& name, ExplainContext& ctx) {
  RouteResult r{name, {}, {}};
  for (const auto& step : enumerate_xps(ctx)) {
    (step.result.kind == XpKind::AXp ? r.axps : r.cxps).push_back(step.result.features);
  }
  r.axps = sorted(std::move(r.axps));
  r.cxps = sorted(std::move(r.cxps));
  return r;
}

// Soft index i stands for feature i+1. MUSes map to `mus_kind`.
RouteResult from_partition(const std::string& name, const sat::SoftPartition& p, bool mus_is_axp,
                           sat::OracleKind kind) {
  RouteResult r{name, {}, {}};
  for (const auto& item : sat::enumerate_mus_mcs(p, std::nullopt, kind)) {
    FeatureSet s;
    for (int i : item.indices) s.push_back(i + 1);
    const bool axp = item.is_mus == mus_is_axp;
    (axp ? r.axps : r.cxps).push_back(std::move(s));
  }
  r.axps = sorted(std::move(r.axps));
  r.cxps = sorted(std::move(r.cxps));
  return r;
}

bool member(const SetCollection& c, const FeatureSet& s) {
  return std::find(c.begin(), c.end(), normalize(s)) != c.end();
}

}  // namespace

bool CrosscheckReport::agree() const {
  for (const auto& r : routes) {
    if (r.axps != routes.front().axps || r.cxps != routes.front().cxps) return false;
  }
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.ok; });
}

CrosscheckReport crosscheck(const Model& model, const Instance& inst, const ContextOptions& options) {
  require_valid(model);
  CrosscheckReport rep;
  brute::Options bopts;
  bopts.constraints = options.constraints ? &*options.constraints : nullptr;
  bopts.epsilon = options.epsilon;
  bopts.guard = options.guard;
  RouteResult oracle{"brute", brute::enumerate(model, inst, XpKind::AXp, bopts),
                     brute::enumerate(model, inst, XpKind::CXp, bopts)};
  rep.routes.push_back(oracle);

  auto with_backend = [&](Backend b) {
    ContextOptions o = options;
    o.backend = b;
    return o;
  };
  {
    ExplainContext ctx(model, inst, with_backend(Backend::Sat));
    rep.routes.push_back(from_enumeration("sat", ctx));
    const Explanation one_axp = find_one_xp(ctx, XpKind::AXp);
    rep.checks.push_back({"one-axp", member(oracle.axps, one_axp.features)});
    if (!oracle.cxps.empty()) {
      const Explanation one_cxp = find_one_xp(ctx, XpKind::CXp);
      rep.checks.push_back({"one-cxp", member(oracle.cxps, one_cxp.features)});
    }
    const Explanation smallest = smallest_axp(ctx);
    std::size_t min_size = SIZE_MAX;
    for (const auto& a : oracle.axps) min_size = std::min(min_size, a.size());
    rep.checks.push_back({"smallest-axp", member(oracle.axps, smallest.features) &&
                                              smallest.features.size() == min_size});
  }
  {
    Encoding enc = encode_model(model, inst);
    if (options.constraints) inject_constraints(enc, *options.constraints);
    if (options.epsilon) restrict_locality(enc, *options.epsilon);
    rep.routes.push_back(from_partition("encoding-mus-mcs", enc.partition(), true,
                                        sat::OracleKind::Cdcl));
  }
  rep.checks.push_back({"duality-axp", all_minimal_hitting_sets(oracle.cxps) == oracle.axps ||
                                           (oracle.cxps.empty() && oracle.axps == SetCollection{{}})});
  rep.checks.push_back({"duality-cxp", oracle.axps == SetCollection{{}}
                                           ? oracle.cxps.empty()
                                           : all_minimal_hitting_sets(oracle.axps) == oracle.cxps});

  const bool plain = !options.constraints && !options.epsilon;
  if (plain) {
    if (const auto* dt = model.as<DecisionTree>()) {
      ExplainContext ctx(model, inst, with_backend(Backend::DtNative));
      rep.routes.push_back(from_enumeration("dt", ctx));
      RouteResult tractable{"dt-tractable", {}, {}};
      for (const auto& c : dt_all_cxps(*dt, model.space(), inst)) tractable.cxps.push_back(c.features);
      tractable.cxps = sorted(std::move(tractable.cxps));
      tractable.axps = tractable.cxps.empty() ? SetCollection{{}}
                                               : all_minimal_hitting_sets(tractable.cxps);
      rep.routes.push_back(tractable);
      rep.routes.push_back(from_partition("dt-horn", encode_dt_horn(*dt, model.space(), inst).partition,
                                          false, sat::OracleKind::Horn));
      rep.checks.push_back(
          {"dt-one-axp", member(oracle.axps, dt_one_axp(*dt, model.space(), inst).features)});
      bool exact = true;
      for (const FeatureSet& x : {FeatureSet{}, oracle.axps.front(), model.space().all_features()}) {
        exact = exact && conditional_probability(*dt, model.space(), inst, x) ==
                             brute::conditional_probability(model, inst, x, bopts);
      }
      rep.checks.push_back({"probability", exact});
    }
    if (model.as<MonotonicClassifier>()) {
      ExplainContext ctx(model, inst, with_backend(Backend::MonotoneNative));
      rep.routes.push_back(from_enumeration("monotone", ctx));
      rep.checks.push_back({"mono-one-axp", member(oracle.axps, mono_one_axp(model, inst).features)});
      if (!oracle.cxps.empty()) {
        rep.checks.push_back({"mono-one-cxp", member(oracle.cxps, mono_one_cxp(model, inst).features)});
      }
    }
  }
  return rep;
}

}  // namespace xpkit
