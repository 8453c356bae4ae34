#include "xpkit/xpkit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "../report.hpp"
#include "xpkit/encodings.hpp"
#include "xpkit/error.hpp"
#include "xpkit/model_io.hpp"
#include "xpkit/tractable.hpp"

struct xpk_model {
  xpkit::Model model;
};

struct xpk_instance {
  xpkit::Instance inst;
};

struct xpk_context {
  xpkit::ExplainContext ctx;
};

namespace {

thread_local std::string last_error;

xpk_status status_of(xpkit::ErrorKind kind) {
  switch (kind) {
    case xpkit::ErrorKind::Domain:
    case xpkit::ErrorKind::Model: return XPK_ERR_INVALID;
    case xpkit::ErrorKind::Contract: return XPK_ERR_CONTRACT;
    case xpkit::ErrorKind::Resource: return XPK_ERR_RESOURCE;
    case xpkit::ErrorKind::Io: return XPK_ERR_IO;
  }
  return XPK_ERR_INTERNAL;
}

xpk_status usage(const char* message) {
  last_error = message;
  return XPK_ERR_USAGE;
}

template <class F>
xpk_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return XPK_OK;
  } catch (const xpkit::Error& e) {
    last_error = std::string(xpkit::to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "resource: out of memory";
    return XPK_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return XPK_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* dump(const nlohmann::ordered_json& j) { return dup(j.dump()); }

std::vector<int> ints(const int* p, std::size_t n) {
  return p ? std::vector<int>(p, p + n) : std::vector<int>{};
}

xpkit::ContextOptions context_options(const xpkit::Model& model, const xpk_options* opts) {
  xpkit::ContextOptions o;
  if (!opts) return o;
  switch (opts->backend) {
    case XPK_BACKEND_AUTO: o.backend = xpkit::Backend::Auto; break;
    case XPK_BACKEND_SAT: o.backend = xpkit::Backend::Sat; break;
    case XPK_BACKEND_BRUTE: o.backend = xpkit::Backend::Brute; break;
    case XPK_BACKEND_DT: o.backend = xpkit::Backend::DtNative; break;
    case XPK_BACKEND_MONOTONE: o.backend = xpkit::Backend::MonotoneNative; break;
    default: xpkit::fail(xpkit::ErrorKind::Contract, "unknown backend");
  }
  if (opts->has_epsilon) {
    if (opts->epsilon < 0) xpkit::fail(xpkit::ErrorKind::Contract, "locality bound must be nonnegative");
    o.epsilon = opts->epsilon;
  }
  if (opts->constraints_path) {
    o.constraints = xpkit::load_constraints(model.space(), opts->constraints_path);
  }
  return o;
}

xpk_status one_xp(xpk_context* ctx, xpkit::XpKind kind, const int* seed, std::size_t seed_len,
                  const int* order, std::size_t order_len, char** out) {
  if (!ctx || !out) return usage("null argument");
  return guarded([&] {
    std::optional<xpkit::FeatureSet> s;
    if (seed) s = ints(seed, seed_len);
    std::vector<xpkit::TraceStep> steps;
    const auto e = xpkit::find_one_xp(ctx->ctx, kind, s, ints(order, order_len), &steps);
    auto j = xpkit::report::explanation(ctx->ctx.model().space(), ctx->ctx.instance(), e);
    j["backend"] = xpkit::to_string(ctx->ctx.backend());
    j["trace"] = xpkit::report::trace(steps);
    *out = dump(j);
  });
}

}  // namespace

extern "C" {

const char* xpk_version(void) { return "0.1.0"; }

const char* xpk_last_error(void) { return last_error.c_str(); }

void xpk_string_free(char* s) { std::free(s); }

void xpk_options_init(xpk_options* opts) {
  if (!opts) return;
  opts->backend = XPK_BACKEND_AUTO;
  opts->has_epsilon = 0;
  opts->epsilon = 0;
  opts->constraints_path = nullptr;
}

xpk_status xpk_backend_parse(const char* name, xpk_backend* out) {
  if (!name || !out) return usage("null argument");
  const auto b = xpkit::parse_backend(name);
  if (!b) return usage("unknown backend name");
  switch (*b) {
    case xpkit::Backend::Auto: *out = XPK_BACKEND_AUTO; break;
    case xpkit::Backend::Sat: *out = XPK_BACKEND_SAT; break;
    case xpkit::Backend::Brute: *out = XPK_BACKEND_BRUTE; break;
    case xpkit::Backend::DtNative: *out = XPK_BACKEND_DT; break;
    case xpkit::Backend::MonotoneNative: *out = XPK_BACKEND_MONOTONE; break;
  }
  return XPK_OK;
}

xpk_status xpk_model_load(const char* path, xpk_model** out) {
  if (!path || !out) return usage("null argument");
  return guarded([&] { *out = new xpk_model{xpkit::load_model(path)}; });
}

xpk_status xpk_model_parse(const char* json, xpk_model** out) {
  if (!json || !out) return usage("null argument");
  return guarded([&] { *out = new xpk_model{xpkit::parse_model(json)}; });
}

void xpk_model_free(xpk_model* model) { delete model; }

int xpk_model_num_features(const xpk_model* model) {
  return model ? model->model.space().num_features() : 0;
}

xpk_status xpk_model_predict(const xpk_model* model, const int* point, size_t n, char** out) {
  if (!model || (!point && n) || !out) return usage("null argument");
  return guarded([&] {
    const xpkit::Point p(point, point + n);
    model->model.space().check_point(p);
    *out = dump(xpkit::report::class_label(model->model.space(), model->model.predict(p)));
  });
}

xpk_status xpk_model_validate(const xpk_model* model, char** out) {
  if (!model || !out) return usage("null argument");
  return guarded([&] { *out = dump(xpkit::report::validation(xpkit::validate_model(model->model))); });
}

xpk_status xpk_instance_load(const xpk_model* model, const char* path, xpk_instance** out) {
  if (!model || !path || !out) return usage("null argument");
  return guarded([&] { *out = new xpk_instance{xpkit::load_instance(model->model, path)}; });
}

xpk_status xpk_instance_parse(const xpk_model* model, const char* json, xpk_instance** out) {
  if (!model || !json || !out) return usage("null argument");
  return guarded([&] { *out = new xpk_instance{xpkit::parse_instance(model->model, json)}; });
}

void xpk_instance_free(xpk_instance* inst) { delete inst; }

xpk_status xpk_context_create(const xpk_model* model, const xpk_instance* inst,
                              const xpk_options* opts, xpk_context** out) {
  if (!model || !inst || !out) return usage("null argument");
  return guarded([&] {
    *out = new xpk_context{
        xpkit::ExplainContext(model->model, inst->inst, context_options(model->model, opts))};
  });
}

void xpk_context_free(xpk_context* ctx) { delete ctx; }

size_t xpk_context_oracle_calls(const xpk_context* ctx) { return ctx ? ctx->ctx.oracle_calls() : 0; }

xpk_status xpk_axp(xpk_context* ctx, const int* seed, size_t seed_len, const int* order,
                   size_t order_len, char** out) {
  return one_xp(ctx, xpkit::XpKind::AXp, seed, seed_len, order, order_len, out);
}

xpk_status xpk_cxp(xpk_context* ctx, const int* seed, size_t seed_len, const int* order,
                   size_t order_len, char** out) {
  return one_xp(ctx, xpkit::XpKind::CXp, seed, seed_len, order, order_len, out);
}

xpk_status xpk_smallest_axp(xpk_context* ctx, char** out) {
  if (!ctx || !out) return usage("null argument");
  return guarded([&] {
    const auto e = xpkit::smallest_axp(ctx->ctx);
    auto j = xpkit::report::explanation(ctx->ctx.model().space(), ctx->ctx.instance(), e);
    j["backend"] = xpkit::to_string(ctx->ctx.backend());
    *out = dump(j);
  });
}

xpk_status xpk_enumerate(xpk_context* ctx, size_t limit, int invert_polarity, char** out) {
  if (!ctx || !out) return usage("null argument");
  return guarded([&] {
    xpkit::EnumerateOptions o;
    if (limit) o.limit = limit;
    o.invert_polarity = invert_polarity != 0;
    const auto steps = xpkit::enumerate_xps(ctx->ctx, o);
    auto j = xpkit::report::enumeration(ctx->ctx.model().space(), ctx->ctx.instance(), steps);
    j["backend"] = xpkit::to_string(ctx->ctx.backend());
    *out = dump(j);
  });
}

xpk_status xpk_fmp(xpk_context* ctx, int feature, char** out) {
  if (!ctx || !out) return usage("null argument");
  return guarded([&] {
    const auto m = xpkit::feature_membership(ctx->ctx, feature);
    *out = dump(xpkit::report::membership(ctx->ctx.model().space(), ctx->ctx.instance(), feature, m));
  });
}

xpk_status xpk_paxp(const xpk_model* model, const xpk_instance* inst, const char* delta,
                    const int* order, size_t order_len, char** out) {
  if (!model || !inst || !delta || !out) return usage("null argument");
  return guarded([&] {
    const auto* dt = model->model.as<xpkit::DecisionTree>();
    if (!dt) xpkit::fail(xpkit::ErrorKind::Contract, "probabilistic explanations need a decision tree");
    xpkit::require_valid(model->model);
    const xpkit::Rational d = xpkit::parse_rational(delta);
    const auto e = xpkit::locally_minimal_paxp(*dt, model->model.space(), inst->inst, d,
                                               ints(order, order_len));
    *out = dump(xpkit::report::paxp(*dt, model->model.space(), inst->inst, d, e));
  });
}

xpk_status xpk_global(const xpk_model* model, const char* class_label, char** out) {
  if (!model || !class_label || !out) return usage("null argument");
  return guarded([&] {
    const auto& space = model->model.space();
    const auto k = space.find_class(class_label);
    if (!k) xpkit::fail(xpkit::ErrorKind::Domain, std::string("unknown class ") + class_label);
    *out = dump(xpkit::report::global(space, *k, xpkit::global_axps_and_counterexamples(model->model, *k)));
  });
}

xpk_status xpk_export_dimacs(const xpk_model* model, const xpk_instance* inst,
                             const xpk_options* opts, int horn, char** out_cnf, char** out_map) {
  if (!model || !inst || !out_cnf || !out_map) return usage("null argument");
  return guarded([&] {
    xpkit::sat::DimacsExport ex;
    if (horn) {
      const auto* dt = model->model.as<xpkit::DecisionTree>();
      if (!dt) xpkit::fail(xpkit::ErrorKind::Contract, "the Horn encoding needs a decision tree");
      xpkit::require_valid(model->model);
      if (opts && (opts->has_epsilon || opts->constraints_path)) {
        xpkit::fail(xpkit::ErrorKind::Contract, "the Horn encoding supports neither constraints nor locality");
      }
      const auto h = xpkit::encode_dt_horn(*dt, model->model.space(), inst->inst);
      std::map<int, std::string> names;
      for (std::size_t i = 0; i < h.universal.size(); ++i) names[h.universal[i]] = "u" + std::to_string(i + 1);
      for (const auto& [node, var] : h.blocked) names[var] = "b" + std::to_string(node);
      ex = xpkit::sat::export_partition(h.partition, names);
    } else {
      const auto o = context_options(model->model, opts);
      xpkit::ExplainContext check(model->model, inst->inst, o);  // validates instance and options
      xpkit::Encoding enc = xpkit::encode_model(model->model, inst->inst);
      if (check.options().constraints) xpkit::inject_constraints(enc, *check.options().constraints);
      if (o.epsilon) xpkit::restrict_locality(enc, *o.epsilon);
      ex = xpkit::sat::export_partition(enc.partition(), enc.layer.names());
    }
    *out_cnf = dup(ex.cnf);
    try {
      *out_map = dup(ex.sidecar_json);
    } catch (...) {
      std::free(*out_cnf);
      *out_cnf = nullptr;
      throw;
    }
  });
}

xpk_status xpk_crosscheck(const xpk_model* model, const xpk_instance* inst, const xpk_options* opts,
                          char** out, int* agree) {
  if (!model || !inst || !out || !agree) return usage("null argument");
  return guarded([&] {
    xpkit::ContextOptions o = context_options(model->model, opts);
    if (o.constraints && o.constraints->empty()) o.constraints.reset();
    const auto r = xpkit::crosscheck(model->model, inst->inst, o);
    *agree = r.agree() ? 1 : 0;
    *out = dump(xpkit::report::crosscheck(r));
  });
}

}  // extern "C"
