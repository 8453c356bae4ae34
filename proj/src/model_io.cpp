#include "xpkit/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "xpkit/error.hpp"
#include "xpkit/rational.hpp"

namespace xpkit {

using nlohmann::json;

namespace {

constexpr std::size_t kTabulationLimit = std::size_t{1} << 20;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Io, std::string("invalid JSON: ") + e.what());
  }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) fail(ErrorKind::Io, where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(ErrorKind::Io, where + ": unknown field '" + key + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Io, where + ": missing field '" + key + "'");
  return *it;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorKind::Io, where + ": expected an integer");
  return j.get<int>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::Io, where + ": expected an array");
  return j;
}

std::string label_text(const json& j, const std::string& where) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) return j.get<std::string>();
  fail(ErrorKind::Io, where + ": class labels must be integers or strings");
}

int class_of(const FeatureSpace& space, const json& j, const std::string& where) {
  auto k = space.find_class(label_text(j, where));
  if (!k) fail(ErrorKind::Model, where + ": unknown class " + j.dump());
  return *k;
}

Rational number_of(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) {
    // Shortest round-trip text, then parsed exactly: 0.3 means 3/10.
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  fail(ErrorKind::Io, where + ": expected a number");
}

FeatureSpace parse_space(const json& doc) {
  std::vector<Feature> features;
  const json& fs = as_array(require(doc, "features", "model"), "features");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string where = "feature #" + std::to_string(i + 1);
    check_keys(fs[i], {"id", "name", "domain"}, where);
    Feature f;
    f.id = as_int(require(fs[i], "id", where), where);
    if (auto it = fs[i].find("name"); it != fs[i].end()) f.name = it->get<std::string>();
    const json& d = require(fs[i], "domain", where);
    if (d.is_string()) {
      if (d.get<std::string>() != "bool") fail(ErrorKind::Io, where + ": unknown domain " + d.dump());
      f.domain = Domain::Bool();
    } else {
      check_keys(d, {"lo", "hi"}, where + " domain");
      f.domain = Domain::Range(as_int(require(d, "lo", where), where),
                               as_int(require(d, "hi", where), where));
    }
    features.push_back(std::move(f));
  }
  std::vector<std::string> classes;
  bool numeric = true;
  for (const json& c : as_array(require(doc, "classes", "model"), "classes")) {
    numeric = numeric && c.is_number_integer();
    classes.push_back(label_text(c, "classes"));
  }
  return FeatureSpace(std::move(features), std::move(classes), numeric);
}

Literal parse_literal(const json& j, const std::string& where) {
  check_keys(j, {"f", "in", "eq"}, where);
  Literal l;
  l.feature = as_int(require(j, "f", where), where);
  const bool has_in = j.contains("in"), has_eq = j.contains("eq");
  if (has_in == has_eq) fail(ErrorKind::Io, where + ": exactly one of 'in' or 'eq' is required");
  if (has_eq) {
    l.values = {as_int(j["eq"], where)};
  } else {
    for (const json& v : as_array(j["in"], where)) l.values.push_back(as_int(v, where));
  }
  std::sort(l.values.begin(), l.values.end());
  l.values.erase(std::unique(l.values.begin(), l.values.end()), l.values.end());
  return l;
}

std::vector<Rule> parse_rules(const FeatureSpace& space, const json& doc) {
  std::vector<Rule> rules;
  const json& rs = as_array(require(doc, "rules", "model"), "rules");
  for (std::size_t r = 0; r < rs.size(); ++r) {
    const std::string where = "rule #" + std::to_string(r + 1);
    check_keys(rs[r], {"if", "then"}, where);
    Rule rule;
    if (auto it = rs[r].find("if"); it != rs[r].end()) {
      for (const json& l : as_array(*it, where)) rule.condition.push_back(parse_literal(l, where));
    }
    rule.klass = class_of(space, require(rs[r], "then", where), where);
    rules.push_back(std::move(rule));
  }
  return rules;
}

DecisionTree parse_tree(const FeatureSpace& space, const json& doc) {
  std::vector<TreeNode> nodes;
  for (const json& n : as_array(require(doc, "nodes", "model"), "nodes")) {
    const std::string where = "node " + (n.contains("id") ? n["id"].dump() : std::string("?"));
    check_keys(n, {"id", "feature", "children", "class"}, where);
    TreeNode node;
    node.id = as_int(require(n, "id", where), where);
    if (n.contains("class")) {
      if (n.contains("feature") || n.contains("children")) {
        fail(ErrorKind::Io, where + ": a terminal node carries only 'id' and 'class'");
      }
      node.klass = class_of(space, n["class"], where);
    } else {
      node.feature = as_int(require(n, "feature", where), where);
      for (const json& e : as_array(require(n, "children", where), where)) {
        check_keys(e, {"values", "node"}, where + " edge");
        TreeEdge edge;
        for (const json& v : as_array(require(e, "values", where), where)) {
          edge.values.push_back(as_int(v, where));
        }
        std::sort(edge.values.begin(), edge.values.end());
        edge.values.erase(std::unique(edge.values.begin(), edge.values.end()), edge.values.end());
        edge.child = as_int(require(e, "node", where), where);
        node.edges.push_back(std::move(edge));
      }
    }
    nodes.push_back(std::move(node));
  }
  return DecisionTree(std::move(nodes), as_int(require(doc, "root", "model"), "root"));
}

std::vector<int> parse_table(const FeatureSpace& space, const json& doc) {
  std::vector<int> table;
  for (const json& c : as_array(require(doc, "table", "model"), "table")) {
    table.push_back(class_of(space, c, "table"));
  }
  return table;
}

using Expr = std::function<Rational(const Point&)>;

Expr compile_expr(const FeatureSpace& space, const json& j) {
  if (!j.is_object() || j.size() != 1) fail(ErrorKind::Io, "expression: expected a one-key object");
  const std::string op = j.begin().key();
  const json& arg = j.begin().value();
  if (op == "const") {
    Rational c = number_of(arg, "const");
    return [c](const Point&) { return c; };
  }
  if (op == "x") {
    int f = as_int(arg, "x");
    space.feature(f);
    return [f](const Point& p) { return Rational(p[f - 1]); };
  }
  std::vector<Expr> parts;
  for (const json& sub : as_array(arg, op)) parts.push_back(compile_expr(space, sub));
  if (parts.empty()) fail(ErrorKind::Io, "expression '" + op + "' needs operands");
  if (op == "sum" || op == "product") {
    const bool sum = op == "sum";
    return [parts, sum](const Point& p) {
      Rational acc = sum ? 0 : 1;
      for (const auto& e : parts) acc = sum ? Rational(acc + e(p)) : Rational(acc * e(p));
      return acc;
    };
  }
  if (op == "max" || op == "min") {
    const bool mx = op == "max";
    return [parts, mx](const Point& p) {
      Rational acc = parts[0](p);
      for (std::size_t i = 1; i < parts.size(); ++i) {
        Rational v = parts[i](p);
        if (mx ? v > acc : v < acc) acc = v;
      }
      return acc;
    };
  }
  fail(ErrorKind::Io, "unknown expression operator '" + op + "'");
}

std::vector<int> tabulate_expression(const FeatureSpace& space, const json& spec) {
  check_keys(spec, {"score", "grades"}, "expression");
  Expr score = compile_expr(space, require(spec, "score", "expression"));
  struct Grade {
    std::optional<Rational> min;
    int klass;
  };
  std::vector<Grade> grades;
  for (const json& g : as_array(require(spec, "grades", "expression"), "grades")) {
    check_keys(g, {"min", "class"}, "grade");
    Grade grade{std::nullopt, class_of(space, require(g, "class", "grade"), "grade")};
    if (g.contains("min")) grade.min = number_of(g["min"], "grade min");
    grades.push_back(grade);
  }
  if (grades.empty() || grades.back().min) {
    fail(ErrorKind::Io, "grades must end with a fallback entry without 'min'");
  }
  const std::size_t n = space.point_count_within(kTabulationLimit);
  std::vector<int> table;
  table.reserve(n);
  Point p = space.first_point();
  do {
    Rational s = score(p);
    for (const auto& g : grades) {
      if (!g.min || s >= *g.min) {
        table.push_back(g.klass);
        break;
      }
    }
  } while (space.next_point(p));
  return table;
}

bool constant(const std::vector<int>& table) {
  return !table.empty() && std::all_of(table.begin(), table.end(),
                                       [&](int k) { return k == table.front(); });
}

}  // namespace

Model parse_model(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) fail(ErrorKind::Io, "model: expected an object");
  const std::string type = require(doc, "type", "model").get<std::string>();
  const std::string name = doc.value("name", std::string());
  auto keys = [&](std::initializer_list<const char*> extra) {
    std::vector<const char*> allowed = {"type", "name", "description", "features", "classes"};
    allowed.insert(allowed.end(), extra.begin(), extra.end());
    for (const auto& [key, _] : doc.items()) {
      if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
          allowed.end()) {
        fail(ErrorKind::Io, "model: unknown field '" + key + "'");
      }
    }
  };
  FeatureSpace space = parse_space(doc);
  if (type == "dt") {
    keys({"root", "nodes"});
    DecisionTree dt = parse_tree(space, doc);
    return Model(std::move(space), std::move(dt), name);
  }
  if (type == "dl" || type == "ds") {
    keys({"rules"});
    auto rules = parse_rules(space, doc);
    if (type == "dl") return Model(std::move(space), DecisionList{std::move(rules)}, name);
    return Model(std::move(space), DecisionSet{std::move(rules)}, name);
  }
  if (type == "table" || type == "monotonic") {
    keys({"table", "expression"});
    const bool has_table = doc.contains("table");
    if (has_table == doc.contains("expression")) {
      fail(ErrorKind::Io, "model: exactly one of 'table' or 'expression' is required");
    }
    if (type == "table" && !has_table) fail(ErrorKind::Io, "table models need a 'table'");
    std::vector<int> table =
        has_table ? parse_table(space, doc) : tabulate_expression(space, doc["expression"]);
    if (constant(table)) fail(ErrorKind::Model, "classifier is constant");
    if (type == "table") return Model(std::move(space), TabularClassifier{std::move(table)}, name);
    return Model(std::move(space), MonotonicClassifier{std::move(table)}, name);
  }
  fail(ErrorKind::Io, "model: unknown type '" + type + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model load_model(const std::filesystem::path& path) { return parse_model(read_text_file(path)); }

Instance parse_instance(const Model& model, std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_keys(doc, {"point", "class"}, "instance");
  Point p;
  for (const json& v : as_array(require(doc, "point", "instance"), "point")) {
    p.push_back(as_int(v, "point"));
  }
  model.space().check_point(p);
  if (!doc.contains("class")) return predicted_instance(model, std::move(p));
  auto k = model.space().find_class(label_text(doc["class"], "instance"));
  if (!k) fail(ErrorKind::Contract, "instance class " + doc["class"].dump() + " is not a model class");
  return bind_instance(model, std::move(p), *k);
}

Instance load_instance(const Model& model, const std::filesystem::path& path) {
  return parse_instance(model, read_text_file(path));
}

ConstraintSet parse_constraints(const FeatureSpace& space, std::string_view json_text) {
  const json doc = parse_json(json_text);
  check_keys(doc, {"clauses", "description"}, "constraints");
  ConstraintSet cs;
  for (const json& c : as_array(require(doc, "clauses", "constraints"), "clauses")) {
    ValueClause clause;
    for (const json& l : as_array(c, "clause")) {
      check_keys(l, {"f", "op", "v"}, "constraint literal");
      ValueLiteral lit;
      lit.feature = as_int(require(l, "f", "constraint literal"), "f");
      lit.value = as_int(require(l, "v", "constraint literal"), "v");
      const std::string op = l.value("op", std::string("="));
      if (op != "=" && op != "!=") fail(ErrorKind::Io, "constraint op must be '=' or '!='");
      lit.negated = op == "!=";
      if (lit.feature < 1 || lit.feature > space.num_features()) {
        fail(ErrorKind::Domain, "constraint names unknown feature " + std::to_string(lit.feature));
      }
      clause.push_back(lit);
    }
    if (clause.empty()) fail(ErrorKind::Io, "empty constraint clause");
    cs.clauses.push_back(std::move(clause));
  }
  cs.check(space);
  return cs;
}

ConstraintSet load_constraints(const FeatureSpace& space, const std::filesystem::path& path) {
  return parse_constraints(space, read_text_file(path));
}

}  // namespace xpkit
