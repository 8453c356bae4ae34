#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xpkit/brute.hpp"
#include "xpkit/constraints.hpp"
#include "xpkit/explanation.hpp"
#include "xpkit/hitting_sets.hpp"
#include "xpkit/model.hpp"

namespace xpkit {

enum class Backend { Auto, Sat, Brute, DtNative, MonotoneNative };

const char* to_string(Backend b);
std::optional<Backend> parse_backend(std::string_view name);

struct ContextOptions {
  Backend backend = Backend::Auto;
  std::optional<ConstraintSet> constraints;
  std::optional<int> epsilon;  // Hamming locality bound
  brute::SpaceGuard guard = brute::SpaceGuard::from_env();
};

/// Answers "is there a point agreeing with v on `fixed` whose class is not c"
/// (restricted to allowed, local points). Every predicate is built on it.
class CounterexampleOracle {
 public:
  virtual ~CounterexampleOracle() = default;
  virtual std::optional<Point> counterexample(const FeatureSet& fixed) = 0;
};

/// Model, instance, backend, optional constraints and locality bound.
class ExplainContext {
 public:
  /// Throws Model for an invalid model and Contract when the instance class disagrees with the model, the
  /// instance violates the constraints, or the backend cannot serve the
  /// model/options combination.
  ExplainContext(Model model, Instance inst, ContextOptions options = {});
  ExplainContext(const ExplainContext&) = delete;
  ExplainContext& operator=(const ExplainContext&) = delete;

  const Model& model() const { return model_; }
  const Instance& instance() const { return inst_; }
  const ContextOptions& options() const { return options_; }
  /// Resolved backend (never Auto).
  Backend backend() const { return backend_; }
  int num_features() const { return model_.space().num_features(); }

  std::optional<Point> counterexample(const FeatureSet& fixed);
  bool weak_axp(const FeatureSet& s);
  bool weak_cxp(const FeatureSet& s);
  /// WeakAXp or WeakCXp predicate for the given kind (AXp/CXp accepted).
  bool predicate(XpKind kind, const FeatureSet& s);

  std::size_t oracle_calls() const { return calls_; }

 private:
  Model model_;
  Instance inst_;
  ContextOptions options_;
  Backend backend_;
  std::unique_ptr<CounterexampleOracle> oracle_;
  std::size_t calls_ = 0;
};

/// One deletion step: the feature was tested and kept or dropped.
struct TraceStep {
  int feature = 0;
  bool kept = false;
};

/// One AXp or CXp contained in `seed` (default: all features). `order` is
/// the traversal order (default ascending id); features of the seed missing
/// from `order` are visited afterwards in ascending order.
Explanation find_one_xp(ExplainContext& ctx, XpKind kind,
                        const std::optional<FeatureSet>& seed = std::nullopt,
                        const std::vector<int>& order = {},
                        std::vector<TraceStep>* trace = nullptr);

/// Smallest AXp by implicit hitting sets over counterexample difference sets.
Explanation smallest_axp(ExplainContext& ctx);

struct EnumerationStep {
  int iteration = 0;
  std::vector<int> universal;  // u_i per feature (index i-1), as picked
  Explanation result;
  std::string blocking_clause;  // e.g. "(¬u3)" or "(u3 ∨ u5)"
};

struct EnumerateOptions {
  std::optional<std::size_t> limit;
  /// Prefer fixing features in the picker (u_i = 0 is tried first).
  bool invert_polarity = false;
};

/// Duality-driven AXp/CXp enumeration. The picker decides u_m first and
/// shrinks traverse features in descending id order. `emit` may return
/// false to stop early.
std::vector<EnumerationStep> enumerate_xps(
    ExplainContext& ctx, const EnumerateOptions& opts = {},
    const std::function<bool(const EnumerationStep&)>& emit = {});

struct Membership {
  bool member = false;
  std::optional<Explanation> witness;
};

Membership feature_membership(ExplainContext& ctx, int feature);

struct GlobalExplanations {
  std::vector<ValueTerm> axps;
  std::vector<ValueTerm> counterexamples;
};

/// Global AXp's (prime implicants of kappa = c) and CEx's (prime implicants
/// of kappa != c), collected as local AXp's of the binary model [kappa = c]
/// over every point of F.
GlobalExplanations global_axps_and_counterexamples(const Model& model, int klass,
                                                   const brute::SpaceGuard& guard = brute::SpaceGuard::from_env());

/// Renders a term as "(x1=1) ∧ (x4=0)".
std::string to_string(const ValueTerm& term);

}  // namespace xpkit
