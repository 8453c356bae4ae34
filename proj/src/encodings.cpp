#include "xpkit/encodings.hpp"

#include <algorithm>

#include "xpkit/error.hpp"

namespace xpkit {

using sat::Clause;
using sat::CnfFormula;
using sat::Lit;

namespace {

// t <-> AND(lits)
int define_and(CnfFormula& f, const std::vector<Lit>& lits) {
  const int t = f.new_var();
  Clause back{Lit::pos(t)};
  for (Lit a : lits) {
    f.add({Lit::neg(t), a});
    back.push_back(~a);
  }
  f.add(std::move(back));
  return t;
}

// p <-> OR(vars)
int define_or(CnfFormula& f, const std::vector<int>& vars) {
  const int p = f.new_var();
  Clause fwd{Lit::neg(p)};
  for (int t : vars) {
    fwd.push_back(Lit::pos(t));
    f.add({Lit::neg(t), Lit::pos(p)});
  }
  f.add(std::move(fwd));
  return p;
}

std::string value_name(int feature, Value v) {
  return "x" + std::to_string(feature) + "=" + std::to_string(v);
}

}  // namespace

ValueLayer::ValueLayer(const FeatureSpace& space, CnfFormula& f) : space_(space) {
  for (int i = 1; i <= space_.num_features(); ++i) {
    const Domain& d = space_.domain(i);
    std::vector<int> vars;
    if (d.size() == 2) {
      vars.push_back(f.new_var());
      names_[vars.back()] = value_name(i, d.hi);
    } else {
      for (Value v = d.lo; v <= d.hi; ++v) {
        vars.push_back(f.new_var());
        names_[vars.back()] = value_name(i, v);
      }
      Clause at_least;
      for (int x : vars) at_least.push_back(Lit::pos(x));
      f.add(std::move(at_least));
      for (std::size_t a = 0; a < vars.size(); ++a) {
        for (std::size_t b = a + 1; b < vars.size(); ++b) {
          f.add({Lit::neg(vars[a]), Lit::neg(vars[b])});
        }
      }
    }
    groups_.push_back(std::move(vars));
  }
}

Lit ValueLayer::eq(int feature, Value v) const {
  const Domain& d = space_.domain(feature);
  if (!d.contains(v)) {
    fail(ErrorKind::Domain, "value " + std::to_string(v) + " outside the domain of feature " +
                                std::to_string(feature));
  }
  const auto& g = groups_[feature - 1];
  if (d.size() == 2) return Lit::make(g[0], v != d.hi);
  return Lit::pos(g[static_cast<std::size_t>(v - d.lo)]);
}

Lit ValueLayer::truth(CnfFormula& f) {
  if (!truth_) {
    const int t = f.new_var();
    f.add({Lit::pos(t)});
    names_[t] = "true";
    truth_ = Lit::pos(t);
  }
  return *truth_;
}

Lit ValueLayer::in(CnfFormula& f, int feature, const ValueSet& values) {
  const Domain& d = space_.domain(feature);
  ValueSet vals;
  for (Value v : values) {
    if (d.contains(v)) vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  if (vals.empty()) return ~truth(f);
  if (static_cast<int>(vals.size()) == d.size()) return truth(f);
  if (vals.size() == 1) return eq(feature, vals[0]);
  auto key = std::make_pair(feature, vals);
  if (auto it = shared_.find(key); it != shared_.end()) return it->second;
  const int y = f.new_var();
  Clause fwd{Lit::neg(y)};
  std::string name = "x" + std::to_string(feature) + "∈{";
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const Lit e = eq(feature, vals[k]);
    fwd.push_back(e);
    f.add({~e, Lit::pos(y)});
    name += (k ? "," : "") + std::to_string(vals[k]);
  }
  f.add(std::move(fwd));
  names_[y] = name + "}";
  shared_.emplace(std::move(key), Lit::pos(y));
  return Lit::pos(y);
}

Point ValueLayer::decode(const std::vector<bool>& model) const {
  Point p;
  for (int i = 1; i <= space_.num_features(); ++i) {
    const Domain& d = space_.domain(i);
    const auto& g = groups_[i - 1];
    if (d.size() == 2) {
      p.push_back(model.at(g[0]) ? d.hi : d.lo);
      continue;
    }
    Value v = d.lo;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (model.at(g[k])) {
        v = d.lo + static_cast<Value>(k);
        break;
      }
    }
    p.push_back(v);
  }
  return p;
}

Encoding::Encoding(const FeatureSpace& space, Instance inst)
    : hard(), layer(space, hard), instance(std::move(inst)) {
  space.check_point(instance.point);
}

sat::SoftPartition Encoding::partition() const {
  sat::SoftPartition p;
  p.hard = hard;
  for (int i = 1; i <= layer.space().num_features(); ++i) {
    p.soft.push_back({fixed(i)});
    p.labels.push_back(value_name(i, instance.point[i - 1]));
  }
  return p;
}

int Encoding::define_and(const std::vector<Lit>& lits, const std::string& name) {
  const int t = xpkit::define_and(hard, lits);
  layer.names()[t] = name;
  return t;
}

namespace {

int dl_first_rule(const DecisionList& dl, const Point& p) {
  for (std::size_t j = 0; j < dl.rules.size(); ++j) {
    if (term_holds(dl.rules[j].condition, p)) return static_cast<int>(j);
  }
  fail(ErrorKind::Model, "no decision list rule fires");
}

void require_class(int predicted, int klass) {
  if (predicted != klass) {
    fail(ErrorKind::Contract, "instance class does not match the model prediction");
  }
}

struct DsVars {
  std::vector<std::vector<int>> terms;
  std::vector<int> pick;
};

DsVars build_ds(const DecisionSet& ds, int num_classes, CnfFormula& f, ValueLayer& layer) {
  DsVars out;
  out.terms.resize(static_cast<std::size_t>(num_classes));
  for (const Rule& r : ds.rules) {
    std::vector<Lit> lits;
    for (const Literal& l : r.condition) lits.push_back(layer.in(f, l));
    const int t = define_and(f, lits);
    layer.names()[t] = "t" + std::to_string(r.klass) + "_" +
                       std::to_string(out.terms[r.klass].size() + 1);
    out.terms[r.klass].push_back(t);
  }
  for (int k = 0; k < num_classes; ++k) {
    const int p = define_or(f, out.terms[k]);
    layer.names()[p] = "p" + std::to_string(k);
    out.pick.push_back(p);
  }
  return out;
}

}  // namespace

DlEncoding encode_dl(const DecisionList& dl, const FeatureSpace& space, const Instance& inst) {
  if (dl.rules.empty()) fail(ErrorKind::Model, "empty decision list");
  require_class(dl.rules[dl_first_rule(dl, inst.point)].klass, inst.klass);
  DlEncoding out{Encoding(space, inst), {}, {}};
  Encoding& enc = out.enc;
  for (std::size_t j = 0; j < dl.rules.size(); ++j) {
    std::vector<Lit> lits;
    for (const Literal& l : dl.rules[j].condition) lits.push_back(enc.layer.in(enc.hard, l));
    out.t.push_back(enc.define_and(lits, "t" + std::to_string(j + 1)));
  }
  Clause some_flip;
  for (std::size_t j = 0; j < dl.rules.size(); ++j) {
    if (dl.rules[j].klass == inst.klass) continue;
    // f_j <-> t_j and no earlier rule predicting c fires.
    std::vector<Lit> lits{Lit::pos(out.t[j])};
    for (std::size_t l = 0; l < j; ++l) {
      if (dl.rules[l].klass == inst.klass) lits.push_back(Lit::neg(out.t[l]));
    }
    const int f = enc.define_and(lits, "f" + std::to_string(j + 1));
    out.flip[static_cast<int>(j)] = f;
    some_flip.push_back(Lit::pos(f));
  }
  if (some_flip.empty()) {
    fail(ErrorKind::Contract, "no decision list rule predicts a class other than the instance class");
  }
  enc.hard.add(std::move(some_flip));
  return out;
}

DsCheck check_ds_wellformed(const DecisionSet& ds, const FeatureSpace& space) {
  CnfFormula f;
  ValueLayer layer(space, f);
  const DsVars vars = build_ds(ds, space.num_classes(), f, layer);
  sat::Solver solver(f);
  DsCheck out;
  for (int r = 0; r < space.num_classes() && !out.overlap; ++r) {
    for (int s = r + 1; s < space.num_classes(); ++s) {
      const auto res = solver.solve({Lit::pos(vars.pick[r]), Lit::pos(vars.pick[s])});
      if (res.sat) {
        out.overlap = layer.decode(res.model);
        out.overlap_classes = std::make_pair(r, s);
        break;
      }
    }
  }
  std::vector<Lit> none;
  for (int p : vars.pick) none.push_back(Lit::neg(p));
  const auto res = solver.solve(none);
  if (res.sat) out.gap = layer.decode(res.model);
  return out;
}

DsEncoding encode_ds(const DecisionSet& ds, const FeatureSpace& space, const Instance& inst) {
  const DsCheck check = check_ds_wellformed(ds, space);
  if (!check.ok()) fail(ErrorKind::Contract, "decision set is not well formed (overlap or gap)");
  const bool contrast = std::any_of(ds.rules.begin(), ds.rules.end(),
                                    [&](const Rule& r) { return r.klass != inst.klass; });
  if (!contrast) fail(ErrorKind::Contract, "decision set has no rule for another class");
  int fired = -1;
  for (const Rule& r : ds.rules) {
    if (term_holds(r.condition, inst.point)) fired = r.klass;
  }
  require_class(fired, inst.klass);
  DsEncoding out{Encoding(space, inst), {}, {}, inst.klass};
  DsVars vars = build_ds(ds, space.num_classes(), out.enc.hard, out.enc.layer);
  out.terms = std::move(vars.terms);
  out.pick = std::move(vars.pick);
  out.enc.hard.add({Lit::neg(out.pick[inst.klass])});
  return out;
}

Encoding encode_dt_paths(const DecisionTree& dt, const FeatureSpace& space, const Instance& inst) {
  Model probe(space, dt);
  require_class(probe.predict(inst.point), inst.klass);
  Encoding enc(space, inst);
  Clause some_path;
  int k = 0;
  for (const TreePath& path : dt.paths()) {
    if (path.klass == inst.klass) continue;
    const int p = enc.hard.new_var();
    enc.layer.names()[p] = "path" + std::to_string(++k);
    for (const Literal& l : path.literals) {
      enc.hard.add({Lit::neg(p), enc.layer.in(enc.hard, l)});
    }
    some_path.push_back(Lit::pos(p));
  }
  enc.hard.add(std::move(some_path));
  return enc;
}

Encoding encode_table(const std::vector<int>& table, const FeatureSpace& space,
                      const Instance& inst) {
  require_class(table.at(space.index_of(inst.point)), inst.klass);
  Encoding enc(space, inst);
  Clause some_point;
  Point p = space.first_point();
  std::size_t idx = 0;
  do {
    if (table[idx] != inst.klass) {
      const int t = enc.hard.new_var();
      for (int i = 1; i <= space.num_features(); ++i) {
        enc.hard.add({Lit::neg(t), enc.layer.eq(i, p[i - 1])});
      }
      some_point.push_back(Lit::pos(t));
    }
    ++idx;
  } while (space.next_point(p));
  enc.hard.add(std::move(some_point));
  return enc;
}

Encoding encode_model(const Model& model, const Instance& inst) {
  const FeatureSpace& space = model.space();
  if (const auto* dt = model.as<DecisionTree>()) return encode_dt_paths(*dt, space, inst);
  if (const auto* dl = model.as<DecisionList>()) return encode_dl(*dl, space, inst).enc;
  if (const auto* ds = model.as<DecisionSet>()) return encode_ds(*ds, space, inst).enc;
  if (const auto* mc = model.as<MonotonicClassifier>()) return encode_table(mc->table, space, inst);
  return encode_table(model.as<TabularClassifier>()->table, space, inst);
}

DtHornEncoding encode_dt_horn(const DecisionTree& dt, const FeatureSpace& space,
                              const Instance& inst) {
  Model probe(space, dt);
  require_class(probe.predict(inst.point), inst.klass);
  DtHornEncoding out;
  out.counts.assign(5, 0);
  CnfFormula& f = out.partition.hard;
  const int m = space.num_features();
  for (int i = 1; i <= m; ++i) {
    out.universal.push_back(f.new_var());
    out.partition.soft.push_back({Lit::pos(out.universal.back())});
    out.partition.labels.push_back("u" + std::to_string(i));
  }
  for (const TreeNode& n : dt.nodes()) out.blocked[n.id] = f.new_var();

  f.add({Lit::pos(out.blocked.at(dt.root()))});
  out.counts[0] = 1;
  for (const TreeNode& n : dt.nodes()) {
    if (!n.terminal()) continue;
    if (*n.klass == inst.klass) {
      f.add({Lit::pos(out.blocked.at(n.id))});
      ++out.counts[1];
    } else {
      f.add({Lit::neg(out.blocked.at(n.id))});
      ++out.counts[2];
    }
  }
  for (const TreeNode& n : dt.nodes()) {
    if (n.terminal()) continue;
    const Value v = inst.point[n.feature - 1];
    for (const TreeEdge& e : n.edges) {
      const Lit br = Lit::neg(out.blocked.at(n.id));
      const Lit bs = Lit::pos(out.blocked.at(e.child));
      if (std::binary_search(e.values.begin(), e.values.end(), v)) {
        f.add({br, bs});
        ++out.counts[3];
      } else {
        f.add({br, Lit::neg(out.universal[n.feature - 1]), bs});
        ++out.counts[4];
      }
    }
  }
  return out;
}

void inject_constraints(Encoding& enc, const ConstraintSet& constraints) {
  constraints.check(enc.layer.space());
  if (!constraints.allows(enc.instance.point)) {
    fail(ErrorKind::Contract, "instance point violates the input constraints");
  }
  for (const ValueClause& c : constraints.clauses) {
    Clause clause;
    for (const ValueLiteral& l : c) {
      const Lit e = enc.layer.eq(l.feature, l.value);
      clause.push_back(l.negated ? ~e : e);
    }
    enc.hard.add(std::move(clause));
  }
}

void restrict_locality(Encoding& enc, int epsilon) {
  if (epsilon < 0) fail(ErrorKind::Contract, "locality bound must be nonnegative");
  std::vector<Lit> differs;
  for (int i = 1; i <= enc.layer.space().num_features(); ++i) differs.push_back(~enc.fixed(i));
  sat::at_most_k(enc.hard, differs, epsilon);
}

}  // namespace xpkit
