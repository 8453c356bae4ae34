#include "xpkit/brute.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "xpkit/error.hpp"

namespace xpkit::brute {

SpaceGuard SpaceGuard::from_env() {
  SpaceGuard g;
  if (const char* env = std::getenv("XPKIT_SPACE_GUARD"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) g.max_points = static_cast<std::size_t>(v);
  }
  return g;
}

namespace {

bool has_value(const ValueSet& values, Value v) {
  return std::find(values.begin(), values.end(), v) != values.end();
}

bool literals_hold(const Term& term, const Point& p) {
  for (const Literal& l : term) {
    if (!has_value(l.values, p[l.feature - 1])) return false;
  }
  return true;
}

int walk_tree(const DecisionTree& dt, const Point& p) {
  int id = dt.root();
  for (std::size_t steps = 0; steps <= dt.nodes().size(); ++steps) {
    const auto it = std::find_if(dt.nodes().begin(), dt.nodes().end(),
                                 [&](const TreeNode& n) { return n.id == id; });
    if (it == dt.nodes().end()) fail(ErrorKind::Model, "dangling node id " + std::to_string(id));
    if (it->klass) return *it->klass;
    int next = -1;
    for (const TreeEdge& e : it->edges) {
      if (has_value(e.values, p[it->feature - 1])) {
        if (next != -1) fail(ErrorKind::Model, "overlapping edges at node " + std::to_string(id));
        next = e.child;
      }
    }
    if (next == -1) fail(ErrorKind::Model, "no edge matches at node " + std::to_string(id));
    id = next;
  }
  fail(ErrorKind::Model, "tree walk does not terminate");
}

std::size_t table_index(const FeatureSpace& space, const Point& p) {
  std::size_t idx = 0;
  for (int i = 1; i <= space.num_features(); ++i) {
    const Domain& d = space.domain(i);
    idx = idx * static_cast<std::size_t>(d.size()) + static_cast<std::size_t>(p[i - 1] - d.lo);
  }
  return idx;
}

std::size_t checked_count(const FeatureSpace& space, const SpaceGuard& guard) {
  std::size_t n = 1;
  for (const Feature& f : space.features()) {
    const auto s = static_cast<std::size_t>(f.domain.size());
    if (n > guard.max_points / s) {
      fail(ErrorKind::Resource, "feature space exceeds the exhaustive-search guard of " +
                                    std::to_string(guard.max_points) + " points");
    }
    n *= s;
  }
  return n;
}

// Visits every point of F in odometer order (feature 1 slowest).
template <class Fn>
void for_each_point(const FeatureSpace& space, const SpaceGuard& guard, Fn&& fn) {
  checked_count(space, guard);
  const int m = space.num_features();
  Point p(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) p[i - 1] = space.domain(i).lo;
  for (;;) {
    if (!fn(p)) return;
    int i = m;
    while (i >= 1 && p[i - 1] == space.domain(i).hi) {
      p[i - 1] = space.domain(i).lo;
      --i;
    }
    if (i < 1) return;
    ++p[i - 1];
  }
}

bool agrees_on(const Point& x, const Point& v, const FeatureSet& s) {
  return std::all_of(s.begin(), s.end(), [&](int i) { return x[i - 1] == v[i - 1]; });
}

bool admissible(const Point& x, const Instance& inst, const Options& opts) {
  if (opts.constraints && !opts.constraints->allows(x)) return false;
  if (opts.epsilon && hamming(x, inst.point) > *opts.epsilon) return false;
  return true;
}

void check_features(const FeatureSpace& space, const FeatureSet& s) {
  for (int i : s) {
    if (i < 1 || i > space.num_features()) {
      fail(ErrorKind::Domain, "unknown feature id " + std::to_string(i));
    }
  }
}

FeatureSet mask_to_set(std::size_t mask, int m) {
  FeatureSet s;
  for (int i = 0; i < m; ++i) {
    if (mask & (std::size_t{1} << i)) s.push_back(i + 1);
  }
  return s;
}

bool term_less(const ValueTerm& a, const ValueTerm& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

}  // namespace

int predict(const Model& model, const Point& p) {
  const FeatureSpace& space = model.space();
  if (static_cast<int>(p.size()) != space.num_features()) {
    fail(ErrorKind::Domain, "point has the wrong number of features");
  }
  for (int i = 1; i <= space.num_features(); ++i) {
    if (!space.domain(i).contains(p[i - 1])) {
      fail(ErrorKind::Domain, "value out of domain for feature " + std::to_string(i));
    }
  }
  if (const auto* dt = model.as<DecisionTree>()) return walk_tree(*dt, p);
  if (const auto* dl = model.as<DecisionList>()) {
    for (const Rule& r : dl->rules) {
      if (literals_hold(r.condition, p)) return r.klass;
    }
    fail(ErrorKind::Model, "no decision list rule fires");
  }
  if (const auto* ds = model.as<DecisionSet>()) {
    std::set<int> fired;
    for (const Rule& r : ds->rules) {
      if (literals_hold(r.condition, p)) fired.insert(r.klass);
    }
    if (fired.size() != 1) fail(ErrorKind::Model, "decision set does not fire exactly one class");
    return *fired.begin();
  }
  if (const auto* mc = model.as<MonotonicClassifier>()) return mc->table.at(table_index(space, p));
  return model.as<TabularClassifier>()->table.at(table_index(space, p));
}

int hamming(const Point& a, const Point& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

std::optional<Point> counterexample(const Model& model, const Instance& inst,
                                    const FeatureSet& fixed, const Options& opts) {
  check_features(model.space(), fixed);
  std::optional<Point> found;
  for_each_point(model.space(), opts.guard, [&](const Point& x) {
    if (agrees_on(x, inst.point, fixed) && admissible(x, inst, opts) &&
        predict(model, x) != inst.klass) {
      found = x;
      return false;
    }
    return true;
  });
  return found;
}

bool predicate(const Model& model, const Instance& inst, XpKind kind, const FeatureSet& s,
               const Options& opts) {
  check_features(model.space(), s);
  if (kind == XpKind::WeakAXp || kind == XpKind::AXp) {
    return !counterexample(model, inst, s, opts);
  }
  if (kind == XpKind::WeakCXp || kind == XpKind::CXp) {
    return counterexample(model, inst, set_difference(model.space().all_features(), normalize(s)),
                          opts)
        .has_value();
  }
  fail(ErrorKind::Contract, "predicate kind must be AXp or CXp");
}

SetCollection enumerate(const Model& model, const Instance& inst, XpKind kind,
                        const Options& opts) {
  const int m = model.space().num_features();
  if (m >= 63 || (std::size_t{1} << m) > opts.guard.max_points) {
    fail(ErrorKind::Resource, "powerset of features exceeds the exhaustive-search guard");
  }
  const std::size_t subsets = std::size_t{1} << m;
  // cx[S]: some admissible point with a different class differs from v only
  // inside S (freeing S is a weak CXp).
  std::vector<char> cx(subsets, 0);
  for_each_point(model.space(), opts.guard, [&](const Point& x) {
    if (admissible(x, inst, opts) && predict(model, x) != inst.klass) {
      std::size_t d = 0;
      for (int i = 0; i < m; ++i) {
        if (x[i] != inst.point[i]) d |= std::size_t{1} << i;
      }
      cx[d] = 1;
    }
    return true;
  });
  for (int b = 0; b < m; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t s = 0; s < subsets; ++s) {
      if ((s & bit) && cx[s ^ bit]) cx[s] = 1;
    }
  }
  const std::size_t full = subsets - 1;
  SetCollection out;
  for (std::size_t s = 0; s < subsets; ++s) {
    bool keep;
    if (kind == XpKind::AXp || kind == XpKind::WeakAXp) {
      keep = !cx[full ^ s];
      for (int b = 0; keep && b < m; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        if ((s & bit) && !cx[full ^ (s ^ bit)]) keep = false;
      }
    } else if (kind == XpKind::CXp || kind == XpKind::WeakCXp) {
      keep = cx[s] != 0;
      for (int b = 0; keep && b < m; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        if ((s & bit) && cx[s ^ bit]) keep = false;
      }
    } else {
      fail(ErrorKind::Contract, "enumeration kind must be AXp or CXp");
    }
    if (keep) out.push_back(mask_to_set(s, m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GlobalResult global(const Model& model, int klass, const Options& opts) {
  const FeatureSpace& space = model.space();
  if (klass < 0 || klass >= space.num_classes()) fail(ErrorKind::Domain, "class index out of range");
  checked_count(space, opts.guard);
  const int m = space.num_features();
  // Terms in mixed radix: digit 0 is a wildcard, digit d is value lo+d-1.
  std::vector<std::size_t> radix(static_cast<std::size_t>(m)), stride(static_cast<std::size_t>(m));
  std::size_t total = 1;
  for (int i = m; i >= 1; --i) {
    radix[i - 1] = static_cast<std::size_t>(space.domain(i).size()) + 1;
    stride[i - 1] = total;
    if (total > opts.guard.max_points / radix[i - 1]) {
      fail(ErrorKind::Resource, "term space exceeds the exhaustive-search guard");
    }
    total *= radix[i - 1];
  }
  std::vector<char> all_c(total), none_c(total);
  std::vector<std::size_t> digit(static_cast<std::size_t>(m));
  for (std::size_t idx = total; idx-- > 0;) {
    std::size_t rest = idx;
    int wildcard = -1;
    for (int i = 0; i < m; ++i) {
      digit[i] = rest / stride[i];
      rest %= stride[i];
      if (digit[i] == 0 && wildcard < 0) wildcard = i;
    }
    if (wildcard < 0) {
      Point p(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) p[i] = space.domain(i + 1).lo + static_cast<Value>(digit[i]) - 1;
      const bool is_c = predict(model, p) == klass;
      all_c[idx] = is_c;
      none_c[idx] = !is_c;
      continue;
    }
    bool a = true, n = true;
    for (std::size_t d = 1; d < radix[wildcard]; ++d) {
      a = a && all_c[idx + d * stride[wildcard]];
      n = n && none_c[idx + d * stride[wildcard]];
    }
    all_c[idx] = a;
    none_c[idx] = n;
  }
  GlobalResult out;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!all_c[idx] && !none_c[idx]) continue;
    ValueTerm term;
    bool minimal_a = all_c[idx], minimal_n = none_c[idx];
    std::size_t rest = idx;
    for (int i = 0; i < m; ++i) {
      const std::size_t d = rest / stride[i];
      rest %= stride[i];
      if (d == 0) continue;
      term.emplace_back(i + 1, space.domain(i + 1).lo + static_cast<Value>(d) - 1);
      const std::size_t parent = idx - d * stride[i];
      if (all_c[parent]) minimal_a = false;
      if (none_c[parent]) minimal_n = false;
    }
    if (minimal_a) out.axps.push_back(term);
    if (minimal_n) out.counterexamples.push_back(term);
  }
  std::sort(out.axps.begin(), out.axps.end(), term_less);
  std::sort(out.counterexamples.begin(), out.counterexamples.end(), term_less);
  return out;
}

Rational conditional_probability(const Model& model, const Instance& inst, const FeatureSet& fixed,
                                 const Options& opts) {
  check_features(model.space(), fixed);
  BigInt hits = 0, slice = 0;
  for_each_point(model.space(), opts.guard, [&](const Point& x) {
    if (agrees_on(x, inst.point, fixed)) {
      ++slice;
      if (predict(model, x) == inst.klass) ++hits;
    }
    return true;
  });
  return Rational(hits, slice);
}

}  // namespace xpkit::brute
