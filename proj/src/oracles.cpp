#include <algorithm>

#include "xpkit/encodings.hpp"
#include "xpkit/error.hpp"
#include "xpkit/explain.hpp"
#include "xpkit/tractable.hpp"

namespace xpkit {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Sat: return "sat";
    case Backend::Brute: return "brute";
    case Backend::DtNative: return "dt";
    case Backend::MonotoneNative: return "monotone";
  }
  return "?";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "auto") return Backend::Auto;
  if (name == "sat") return Backend::Sat;
  if (name == "brute") return Backend::Brute;
  if (name == "dt" || name == "dt-native") return Backend::DtNative;
  if (name == "monotone" || name == "monotone-native") return Backend::MonotoneNative;
  return std::nullopt;
}

namespace {

class SatOracle final : public CounterexampleOracle {
 public:
  SatOracle(const Model& model, const Instance& inst, const ContextOptions& opts)
      : enc_(encode_model(model, inst)) {
    if (opts.constraints) inject_constraints(enc_, *opts.constraints);
    if (opts.epsilon) restrict_locality(enc_, *opts.epsilon);
    solver_.add_formula(enc_.hard);
  }

  std::optional<Point> counterexample(const FeatureSet& fixed) override {
    std::vector<sat::Lit> assumptions;
    for (int i : fixed) assumptions.push_back(enc_.fixed(i));
    const auto r = solver_.solve(assumptions);
    if (!r.sat) return std::nullopt;
    return enc_.layer.decode(r.model);
  }

 private:
  Encoding enc_;
  sat::Solver solver_;
};

class DtOracle final : public CounterexampleOracle {
 public:
  DtOracle(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst)
      : v_(inst.point) {
    for (const TreePath& path : dt.paths()) {
      if (path.klass == inst.klass) continue;
      Contrast c;
      bool feasible = true;
      for (const Literal& l : path.literals) {
        const Domain& d = space.domain(l.feature);
        auto it = std::find_if(l.values.begin(), l.values.end(), [&](Value x) { return d.contains(x); });
        if (it == l.values.end()) {
          feasible = false;
          break;
        }
        if (!l.holds(v_)) {
          c.inconsistent.push_back(l.feature);
          c.repair.emplace_back(l.feature, *it);
        }
      }
      if (feasible) contrasts_.push_back(std::move(c));
    }
  }

  std::optional<Point> counterexample(const FeatureSet& fixed) override {
    for (const Contrast& c : contrasts_) {
      if (!set_intersection(c.inconsistent, fixed).empty()) continue;
      Point x = v_;
      for (const auto& [i, value] : c.repair) x[i - 1] = value;
      return x;
    }
    return std::nullopt;
  }

 private:
  struct Contrast {
    FeatureSet inconsistent;
    std::vector<std::pair<int, Value>> repair;
  };
  Point v_;
  std::vector<Contrast> contrasts_;
};

class MonotoneOracle final : public CounterexampleOracle {
 public:
  MonotoneOracle(const Model& model, const Instance& inst) : model_(model), inst_(inst) {}

  std::optional<Point> counterexample(const FeatureSet& fixed) override {
    const FeatureSpace& space = model_.space();
    BoundVectors b = all_fixed(inst_.point);
    for (int i = 1; i <= space.num_features(); ++i) {
      if (!contains(fixed, i)) b.free(space, i);
    }
    const int lo = model_.predict(b.lower);
    const int hi = model_.predict(b.upper);
    if (lo > hi) fail(ErrorKind::Model, "classifier is not monotone on the bound probes");
    if (lo != inst_.klass) return b.lower;
    if (hi != inst_.klass) return b.upper;
    return std::nullopt;
  }

 private:
  const Model& model_;
  Instance inst_;
};

class BruteOracle final : public CounterexampleOracle {
 public:
  BruteOracle(const Model& model, const Instance& inst, const ContextOptions& opts)
      : model_(model), inst_(inst), constraints_(opts.constraints) {
    opts_.epsilon = opts.epsilon;
    opts_.guard = opts.guard;
  }

  std::optional<Point> counterexample(const FeatureSet& fixed) override {
    opts_.constraints = constraints_ ? &*constraints_ : nullptr;
    return brute::counterexample(model_, inst_, fixed, opts_);
  }

 private:
  const Model& model_;
  Instance inst_;
  std::optional<ConstraintSet> constraints_;
  brute::Options opts_;
};

}  // namespace

ExplainContext::ExplainContext(Model model, Instance inst, ContextOptions options)
    : model_(std::move(model)), inst_(std::move(inst)), options_(std::move(options)) {
  const FeatureSpace& space = model_.space();
  require_valid(model_);
  space.check_point(inst_.point);
  if (model_.predict(inst_.point) != inst_.klass) {
    fail(ErrorKind::Contract, "instance class does not match the model prediction");
  }
  if (options_.constraints) {
    options_.constraints->check(space);
    if (!options_.constraints->allows(inst_.point)) {
      fail(ErrorKind::Contract, "instance point violates the input constraints");
    }
    if (options_.constraints->empty()) options_.constraints.reset();
  }
  if (options_.epsilon && *options_.epsilon < 0) {
    fail(ErrorKind::Contract, "locality bound must be nonnegative");
  }
  const bool plain = !options_.constraints && !options_.epsilon;
  backend_ = options_.backend;
  if (backend_ == Backend::Auto) {
    if (plain && model_.as<DecisionTree>()) {
      backend_ = Backend::DtNative;
    } else if (plain && model_.as<MonotonicClassifier>()) {
      backend_ = Backend::MonotoneNative;
    } else {
      backend_ = Backend::Sat;
    }
  }
  switch (backend_) {
    case Backend::DtNative:
      if (!model_.as<DecisionTree>()) fail(ErrorKind::Contract, "dt backend needs a decision tree");
      if (!plain) fail(ErrorKind::Contract, "dt backend supports neither constraints nor locality");
      oracle_ = std::make_unique<DtOracle>(*model_.as<DecisionTree>(), space, inst_);
      break;
    case Backend::MonotoneNative:
      if (!model_.as<MonotonicClassifier>()) {
        fail(ErrorKind::Contract, "monotone backend needs a monotonic classifier");
      }
      if (!plain) {
        fail(ErrorKind::Contract, "monotone backend supports neither constraints nor locality");
      }
      oracle_ = std::make_unique<MonotoneOracle>(model_, inst_);
      break;
    case Backend::Brute:
      oracle_ = std::make_unique<BruteOracle>(model_, inst_, options_);
      break;
    default:
      oracle_ = std::make_unique<SatOracle>(model_, inst_, options_);
      break;
  }
}

std::optional<Point> ExplainContext::counterexample(const FeatureSet& fixed) {
  const FeatureSet s = normalize(fixed);
  for (int i : s) model_.space().feature(i);
  ++calls_;
  return oracle_->counterexample(s);
}

bool ExplainContext::weak_axp(const FeatureSet& s) { return !counterexample(s).has_value(); }

bool ExplainContext::weak_cxp(const FeatureSet& s) {
  return counterexample(set_difference(model_.space().all_features(), normalize(s))).has_value();
}

bool ExplainContext::predicate(XpKind kind, const FeatureSet& s) {
  switch (kind) {
    case XpKind::AXp:
    case XpKind::WeakAXp: return weak_axp(s);
    case XpKind::CXp:
    case XpKind::WeakCXp: return weak_cxp(s);
    default: fail(ErrorKind::Contract, "predicate kind must be AXp or CXp");
  }
}

}  // namespace xpkit
