#include "xpkit/hitting_sets.hpp"

#include <algorithm>

#include "xpkit/error.hpp"
#include "xpkit/sat.hpp"

namespace xpkit {

namespace {

void require_hittable(const SetCollection& sets) {
  for (const auto& s : sets) {
    if (s.empty()) fail(ErrorKind::Contract, "collection contains an empty set; it cannot be hit");
  }
}

bool intersects(const FeatureSet& a, const FeatureSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

FeatureSet union_of(const SetCollection& sets) {
  FeatureSet u;
  for (const auto& s : sets) u.insert(u.end(), s.begin(), s.end());
  return normalize(std::move(u));
}

struct Search {
  const SetCollection& sets;
  const FeatureSet& elements;
  FeatureSet current;
  FeatureSet best;
  std::size_t best_size;

  std::vector<std::size_t> unhit() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      if (!intersects(current, sets[k])) out.push_back(k);
    }
    return out;
  }

  // Pairwise-disjoint unhit members restricted to elements >= `from` give a
  // lower bound on the elements still needed.
  std::size_t lower_bound(const std::vector<std::size_t>& open, int from) const {
    std::vector<int> used;
    std::size_t count = 0;
    for (std::size_t k : open) {
      const bool disjoint = std::none_of(sets[k].begin(), sets[k].end(), [&](int e) {
        return e >= from && std::find(used.begin(), used.end(), e) != used.end();
      });
      if (!disjoint) continue;
      ++count;
      for (int e : sets[k]) {
        if (e >= from) used.push_back(e);
      }
    }
    return count;
  }

  void dfs(std::size_t i) {
    const auto open = unhit();
    if (open.empty()) {
      if (current.size() < best_size) {
        best = current;
        best_size = current.size();
      }
      return;
    }
    if (i >= elements.size()) return;
    const int limit = elements[i];
    for (std::size_t k : open) {
      if (sets[k].back() < limit) return;  // some open member can no longer be hit
    }
    if (current.size() + lower_bound(open, limit) >= best_size) return;
    const int e = elements[i];
    const bool useful = std::any_of(open.begin(), open.end(), [&](std::size_t k) {
      return std::binary_search(sets[k].begin(), sets[k].end(), e);
    });
    if (useful) {
      current.push_back(e);
      dfs(i + 1);
      current.pop_back();
    }
    dfs(i + 1);
  }
};

}  // namespace

bool hits_all(const FeatureSet& h, const SetCollection& sets) {
  const FeatureSet hs = normalize(h);
  return std::all_of(sets.begin(), sets.end(),
                     [&](const FeatureSet& s) { return intersects(hs, normalize(s)); });
}

SetCollection minimal_members(const SetCollection& sets) {
  SetCollection norm;
  for (const auto& s : sets) norm.push_back(normalize(s));
  std::sort(norm.begin(), norm.end(), [](const FeatureSet& a, const FeatureSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
  SetCollection out;
  for (const auto& s : norm) {
    const bool dominated = std::any_of(out.begin(), out.end(),
                                       [&](const FeatureSet& m) { return is_subset(m, s); });
    if (!dominated) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FeatureSet minimal_hitting_set(const SetCollection& sets, const std::optional<FeatureSet>& seed) {
  require_hittable(sets);
  const SetCollection members = minimal_members(sets);
  FeatureSet h = seed ? normalize(*seed) : union_of(members);
  if (!hits_all(h, members)) fail(ErrorKind::Contract, "seed is not a hitting set");
  for (std::size_t k = 0; k < h.size();) {
    FeatureSet trial = h;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
    if (hits_all(trial, members)) {
      h = std::move(trial);
    } else {
      ++k;
    }
  }
  return h;
}

FeatureSet minimum_hitting_set(const SetCollection& sets) {
  require_hittable(sets);
  const SetCollection members = minimal_members(sets);
  if (members.empty()) return {};
  const FeatureSet elements = union_of(members);

  // Greedy upper bound: repeatedly take the element hitting most open sets.
  FeatureSet greedy;
  SetCollection open = members;
  while (!open.empty()) {
    int pick = 0;
    std::size_t best_count = 0;
    for (int e : elements) {
      const auto count = static_cast<std::size_t>(std::count_if(
          open.begin(), open.end(),
          [&](const FeatureSet& s) { return std::binary_search(s.begin(), s.end(), e); }));
      if (count > best_count) {
        best_count = count;
        pick = e;
      }
    }
    greedy.push_back(pick);
    std::erase_if(open, [&](const FeatureSet& s) { return std::binary_search(s.begin(), s.end(), pick); });
  }
  Search search{members, elements, {}, normalize(greedy), greedy.size() + 1};
  search.dfs(0);
  return search.best;
}

FeatureSet minimum_hitting_set_sat(const SetCollection& sets) {
  require_hittable(sets);
  const SetCollection members = minimal_members(sets);
  if (members.empty()) return {};
  const FeatureSet elements = union_of(members);
  auto var_of = [&](int e) {
    return static_cast<int>(std::lower_bound(elements.begin(), elements.end(), e) - elements.begin()) + 1;
  };
  for (int k = 1; k <= static_cast<int>(elements.size()); ++k) {
    sat::CnfFormula f(static_cast<int>(elements.size()));
    for (const auto& s : members) {
      sat::Clause c;
      for (int e : s) c.push_back(sat::Lit::pos(var_of(e)));
      f.add(std::move(c));
    }
    std::vector<sat::Lit> xs;
    for (std::size_t i = 0; i < elements.size(); ++i) xs.push_back(sat::Lit::pos(static_cast<int>(i) + 1));
    sat::at_most_k(f, xs, k);
    const auto r = sat::solve(f);
    if (r.sat) {
      FeatureSet h;
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (r.model[i + 1]) h.push_back(elements[i]);
      }
      return h;
    }
  }
  fail(ErrorKind::Contract, "collection cannot be hit");
}

SetCollection all_minimal_hitting_sets(const SetCollection& sets, HittingSetGuard guard) {
  require_hittable(sets);
  const SetCollection members = minimal_members(sets);
  if (union_of(members).size() > guard.max_universe) {
    fail(ErrorKind::Resource, "hitting-set universe exceeds the guard of " +
                                  std::to_string(guard.max_universe) + " elements");
  }
  SetCollection partial{FeatureSet{}};
  for (const auto& s : members) {
    SetCollection next;
    for (const auto& h : partial) {
      if (intersects(h, s)) {
        next.push_back(h);
      } else {
        for (int e : s) next.push_back(normalize(set_union(h, {e})));
      }
      if (next.size() > guard.max_partial) {
        fail(ErrorKind::Resource, "too many partial hitting sets");
      }
    }
    partial = minimal_members(next);
  }
  return partial;
}

}  // namespace xpkit
