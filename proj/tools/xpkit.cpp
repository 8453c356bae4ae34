// Command-line front end; everything goes through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xpkit/xpkit.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kResource = 3, kDisagree = 4, kInternal = 5 };

struct Config {
  std::string model_path;
  std::string instance_path;
  std::string backend = "auto";
  bool oracle = false;
  std::optional<int> epsilon;
  std::string constraints_path;
  std::vector<int> order;
  std::vector<int> seed;
  std::size_t limit = 0;
  bool invert_polarity = false;
  std::string delta;
  int feature = 0;
  std::string klass;
  std::string format = "json";
  bool json_errors = false;
  bool horn = false;
  std::string output;
  std::string map_output;
};

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

int exit_code(xpk_status s) {
  switch (s) {
    case XPK_OK: return kOk;
    case XPK_ERR_USAGE: return kUsage;
    case XPK_ERR_INVALID:
    case XPK_ERR_CONTRACT:
    case XPK_ERR_IO: return kInvalid;
    case XPK_ERR_RESOURCE: return kResource;
    default: return kInternal;
  }
}

const char* status_name(xpk_status s) {
  switch (s) {
    case XPK_ERR_USAGE: return "usage";
    case XPK_ERR_INVALID: return "invalid";
    case XPK_ERR_CONTRACT: return "contract";
    case XPK_ERR_IO: return "io";
    case XPK_ERR_RESOURCE: return "resource";
    default: return "internal";
  }
}

void check(xpk_status s) {
  if (s != XPK_OK) throw Failure{exit_code(s), status_name(s), xpk_last_error()};
}

struct CString {
  char* p = nullptr;
  ~CString() { xpk_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

using ModelHandle = Handle<xpk_model, xpk_model_free>;
using InstanceHandle = Handle<xpk_instance, xpk_instance_free>;
using ContextHandle = Handle<xpk_context, xpk_context_free>;

const int* data_or_null(const std::vector<int>& v) { return v.empty() ? nullptr : v.data(); }

std::string join(const json& ints, const char* sep = ",") {
  std::string out;
  for (std::size_t k = 0; k < ints.size(); ++k) {
    if (k) out += sep;
    out += ints[k].dump();
  }
  return out;
}

std::string set_text(const json& ints) { return "{" + join(ints) + "}"; }

// Text renderings are for people; JSON is the stable contract.
std::string render_text(const std::string& command, const json& j) {
  std::string out;
  auto line = [&](const std::string& s) { out += s + "\n"; };
  if (command == "axp" || command == "cxp" || command == "smallest-axp" || command == "paxp") {
    line(j["kind"].get<std::string>() + " " + set_text(j["features"]));
    line(j["rule"].get<std::string>());
    if (j.contains("probability")) {
      line("probability " + j["probability"].get<std::string>() + " = " +
           j["probability_reduced"].get<std::string>() + " ~ " +
           j["probability_decimal"].get<std::string>());
    }
  } else if (command == "enumerate") {
    for (const auto& row : j["trace"]) {
      line(std::to_string(row["iteration"].get<int>()) + ". u=(" + join(row["u"]) + ") " +
           row["kind"].get<std::string>() + " " + set_text(row["features"]) + " block " +
           row["blocking_clause"].get<std::string>());
    }
    for (const auto& e : j["explanations"]) line(e["rule"].get<std::string>());
  } else if (command == "fmp") {
    line("feature " + j["feature"].dump() + (j["member"].get<bool>() ? " is" : " is not") +
         " in some explanation");
    if (!j["witness"].is_null()) {
      line(j["witness"]["kind"].get<std::string>() + " " + set_text(j["witness"]["features"]));
    }
  } else if (command == "global") {
    line("global AXp's:");
    for (const auto& t : j["global_axps"]) line("  " + t["rule"].get<std::string>());
    line("counterexamples:");
    for (const auto& t : j["counterexamples"]) line("  " + t["rule"].get<std::string>());
  } else if (command == "validate") {
    line(j["ok"].get<bool>() ? "valid" : "invalid");
    for (const auto& v : j["violations"]) line("  " + v.get<std::string>());
  } else if (command == "crosscheck") {
    for (const auto& r : j["routes"]) {
      std::string axps, cxps;
      for (const auto& s : r["axps"]) axps += set_text(s);
      for (const auto& s : r["cxps"]) cxps += set_text(s);
      line(r["route"].get<std::string>() + (r["agrees"].get<bool>() ? " ok" : " DISAGREES") +
           " axps " + axps + " cxps " + cxps);
    }
    for (const auto& c : j["checks"]) {
      line(c["check"].get<std::string>() + (c["ok"].get<bool>() ? " ok" : " FAILED"));
    }
    line(j["agree"].get<bool>() ? "all routes agree" : "disagreement found");
  } else {
    out = j.dump(2) + "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Failure{kUsage, "io", "cannot write " + path};
}

int run(const std::string& command, const Config& cfg) {
  ModelHandle model;
  check(xpk_model_load(cfg.model_path.c_str(), &model.p));

  xpk_options opts;
  xpk_options_init(&opts);
  check(xpk_backend_parse(cfg.oracle ? "brute" : cfg.backend.c_str(), &opts.backend));
  if (cfg.epsilon) {
    opts.has_epsilon = 1;
    opts.epsilon = *cfg.epsilon;
  }
  if (!cfg.constraints_path.empty()) opts.constraints_path = cfg.constraints_path.c_str();

  CString result;
  int code = kOk;
  if (command == "validate") {
    check(xpk_model_validate(model.p, &result.p));
    if (!json::parse(result.str())["ok"].get<bool>()) code = kInvalid;
  } else if (command == "global") {
    check(xpk_global(model.p, cfg.klass.c_str(), &result.p));
  } else {
    InstanceHandle inst;
    check(xpk_instance_load(model.p, cfg.instance_path.c_str(), &inst.p));
    if (command == "paxp") {
      check(xpk_paxp(model.p, inst.p, cfg.delta.c_str(), data_or_null(cfg.order), cfg.order.size(),
                     &result.p));
    } else if (command == "crosscheck") {
      int agree = 0;
      check(xpk_crosscheck(model.p, inst.p, &opts, &result.p, &agree));
      if (!agree) code = kDisagree;
    } else if (command == "export-dimacs") {
      CString map;
      check(xpk_export_dimacs(model.p, inst.p, &opts, cfg.horn ? 1 : 0, &result.p, &map.p));
      if (!cfg.map_output.empty()) write_file(cfg.map_output, map.str());
      if (!cfg.output.empty()) {
        write_file(cfg.output, result.str());
      } else {
        std::cout << result.str();
      }
      return kOk;
    } else {
      ContextHandle ctx;
      check(xpk_context_create(model.p, inst.p, &opts, &ctx.p));
      if (command == "axp") {
        check(xpk_axp(ctx.p, cfg.seed.empty() ? nullptr : cfg.seed.data(), cfg.seed.size(),
                      data_or_null(cfg.order), cfg.order.size(), &result.p));
      } else if (command == "cxp") {
        check(xpk_cxp(ctx.p, cfg.seed.empty() ? nullptr : cfg.seed.data(), cfg.seed.size(),
                      data_or_null(cfg.order), cfg.order.size(), &result.p));
      } else if (command == "smallest-axp") {
        check(xpk_smallest_axp(ctx.p, &result.p));
      } else if (command == "enumerate") {
        check(xpk_enumerate(ctx.p, cfg.limit, cfg.invert_polarity ? 1 : 0, &result.p));
      } else if (command == "fmp") {
        check(xpk_fmp(ctx.p, cfg.feature, &result.p));
      }
    }
  }
  const json j = json::parse(result.str());
  std::cout << (cfg.format == "text" ? render_text(command, j) : j.dump(2) + "\n");
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal explanations for classifiers: AXp, CXp, enumeration, probabilities"};
  app.set_version_flag("--version", std::string(xpk_version()));
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool needs_instance) {
    sub->add_option("--model", cfg.model_path, "model JSON file")->required()->check(CLI::ExistingFile);
    if (needs_instance) {
      sub->add_option("--instance", cfg.instance_path, "instance JSON file")
          ->required()
          ->check(CLI::ExistingFile);
    }
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--json-errors", cfg.json_errors, "report errors as JSON on stdout");
  };
  auto context = [&](CLI::App* sub) {
    sub->add_option("--backend", cfg.backend, "auto, sat, brute, dt or monotone")
        ->check(CLI::IsMember({"auto", "sat", "brute", "dt", "dt-native", "monotone", "monotone-native"}));
    sub->add_flag("--oracle", cfg.oracle, "use the brute-force oracle (same as --backend brute)");
    sub->add_option("--epsilon", cfg.epsilon, "Hamming locality bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--constraints", cfg.constraints_path, "input constraints JSON file")
        ->check(CLI::ExistingFile);
  };

  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    subs.emplace_back(name, sub);
    return sub;
  };

  for (const char* name : {"axp", "cxp"}) {
    CLI::App* sub = add(name, std::string("one ") + (name[0] == 'a' ? "abductive" : "contrastive") +
                                  " explanation by deletion");
    common(sub, true);
    context(sub);
    sub->add_option("--order", cfg.order, "deletion order (feature ids)")->delimiter(',');
    sub->add_option("--seed", cfg.seed, "start from this weak explanation")->delimiter(',');
  }
  {
    CLI::App* sub = add("smallest-axp", "cardinality-minimum abductive explanation");
    common(sub, true);
    context(sub);
  }
  {
    CLI::App* sub = add("enumerate", "all abductive and contrastive explanations");
    common(sub, true);
    context(sub);
    sub->add_option("--limit", cfg.limit, "stop after this many explanations (0: all)");
    sub->add_flag("--invert-polarity", cfg.invert_polarity, "prefer fixing features when picking");
  }
  {
    CLI::App* sub = add("paxp", "locally minimal probabilistic AXp of a decision tree");
    common(sub, true);
    sub->add_option("--delta", cfg.delta, "probability threshold in (0,1]")->required();
    sub->add_option("--order", cfg.order, "deletion order (feature ids)")->delimiter(',');
  }
  {
    CLI::App* sub = add("fmp", "is a feature in some explanation");
    common(sub, true);
    context(sub);
    sub->add_option("--feature", cfg.feature, "feature id")->required();
  }
  {
    CLI::App* sub = add("global", "global AXp's and counterexamples of a class");
    common(sub, false);
    sub->add_option("--class", cfg.klass, "class label")->required();
  }
  {
    CLI::App* sub = add("validate", "check model invariants");
    common(sub, false);
  }
  {
    CLI::App* sub = add("export-dimacs", "write the counterexample encoding as DIMACS");
    common(sub, true);
    context(sub);
    sub->add_flag("--horn", cfg.horn, "export the Horn encoding of a decision tree");
    sub->add_option("--output", cfg.output, "CNF output file (default: stdout)");
    sub->add_option("--map", cfg.map_output, "selector map JSON output file");
  }
  {
    CLI::App* sub = add("crosscheck", "compare every backend against the brute-force oracle");
    common(sub, true);
    context(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }
  try {
    return run(command, cfg);
  } catch (const Failure& f) {
    if (cfg.json_errors) {
      std::cout << json{{"error", {{"kind", f.kind}, {"message", f.message}}}}.dump(2) << "\n";
    } else {
      std::cerr << "xpkit: " << f.message << "\n";
    }
    return f.code;
  } catch (const std::exception& e) {
    if (cfg.json_errors) {
      std::cout << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump(2) << "\n";
    } else {
      std::cerr << "xpkit: " << e.what() << "\n";
    }
    return kInternal;
  }
}
