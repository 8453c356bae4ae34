#include "xpkit/soft.hpp"

#include <algorithm>

#include "xpkit/error.hpp"

namespace xpkit::sat {

std::string SoftPartition::label(std::size_t i) const {
  if (i < labels.size() && !labels[i].empty()) return labels[i];
  return "s" + std::to_string(i + 1);
}

bool SoftPartition::is_horn() const {
  return hard.is_horn() &&
         std::all_of(soft.begin(), soft.end(), [](const Clause& c) { return sat::is_horn(c); });
}

SoftOracle::SoftOracle(const SoftPartition& p, OracleKind kind)
    : n_(p.num_soft()), guarded_(p.hard) {
  const bool horn = p.is_horn();
  if (kind == OracleKind::Horn && !horn) {
    fail(ErrorKind::Contract, "Horn oracle requested for a non-Horn partition");
  }
  horn_ = kind == OracleKind::Horn || (kind == OracleKind::Auto && horn);
  for (const auto& c : p.soft) {
    for (Lit l : c) guarded_.reserve_vars(l.var());
  }
  for (const auto& c : p.soft) {
    const int s = guarded_.new_var();
    selector_.push_back(s);
    Clause g = c;
    g.push_back(Lit::neg(s));
    guarded_.add(std::move(g));
  }
  if (!horn_) solver_.emplace(guarded_);
}

bool SoftOracle::consistent(const std::vector<int>& subset, std::vector<int>* core) {
  ++calls_;
  for (int i : subset) {
    if (i < 0 || static_cast<std::size_t>(i) >= n_) {
      fail(ErrorKind::Contract, "soft index out of range");
    }
  }
  if (horn_) {
    std::vector<int> vars;
    for (int i : subset) vars.push_back(selector_[i]);
    const bool ok = horn_consistent(guarded_, vars).consistent;
    if (!ok && core) *core = subset;
    return ok;
  }
  std::vector<Lit> assumptions;
  for (int i : subset) assumptions.push_back(Lit::pos(selector_[i]));
  const SolveOutcome r = solver_->solve(assumptions);
  if (!r.sat && core) {
    core->clear();
    for (int i : subset) {
      if (std::find(r.core.begin(), r.core.end(), Lit::pos(selector_[i])) != r.core.end()) {
        core->push_back(i);
      }
    }
    std::sort(core->begin(), core->end());
  }
  return r.sat;
}

namespace {

std::vector<int> without(const std::vector<int>& s, int e) {
  std::vector<int> out;
  for (int x : s) {
    if (x != e) out.push_back(x);
  }
  return out;
}

// S is inconsistent; shrinks it to an MUS by single deletions in ascending
// order, replacing S with the solver core whenever one is returned.
std::vector<int> shrink(SoftOracle& oracle, std::vector<int> s) {
  std::sort(s.begin(), s.end());
  std::size_t pos = 0;
  std::vector<int> core;
  while (pos < s.size()) {
    std::vector<int> rest = without(s, s[pos]);
    if (!oracle.consistent(rest, &core)) {
      s = core;
    } else {
      ++pos;
    }
  }
  return s;
}

// M is consistent; grows it to an MSS in ascending index order.
std::vector<int> grow(SoftOracle& oracle, std::vector<int> m, std::size_t n) {
  std::sort(m.begin(), m.end());
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (std::binary_search(m.begin(), m.end(), i)) continue;
    std::vector<int> trial = m;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), i), i);
    if (oracle.consistent(trial)) m = std::move(trial);
  }
  return m;
}

std::vector<int> complement(const std::vector<int>& m, std::size_t n) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (!std::binary_search(m.begin(), m.end(), i)) out.push_back(i);
  }
  return out;
}

std::vector<int> all_indices(std::size_t n) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
  return out;
}

}  // namespace

std::vector<int> extract_mus(const SoftPartition& p, OracleKind kind, ExtractStats* stats) {
  SoftOracle oracle(p, kind);
  std::vector<int> core;
  if (oracle.consistent(all_indices(p.num_soft()), &core)) {
    fail(ErrorKind::Contract, "hard and soft clauses are jointly consistent; no MUS exists");
  }
  std::vector<int> mus = shrink(oracle, core);
  if (stats) stats->oracle_calls = oracle.calls();
  return mus;
}

std::vector<int> extract_mcs(const SoftPartition& p, OracleKind kind, ExtractStats* stats) {
  SoftOracle oracle(p, kind);
  if (!oracle.consistent({})) fail(ErrorKind::Contract, "hard clauses are inconsistent");
  std::vector<int> mcs = complement(grow(oracle, {}, p.num_soft()), p.num_soft());
  if (stats) stats->oracle_calls = oracle.calls();
  return mcs;
}

Picker::Picker(std::vector<int> priority, bool prefer_true)
    : priority_(std::move(priority)), solver_(SolverOptions{prefer_true}) {
  solver_.reserve_vars(static_cast<int>(priority_.size()));
}

int Picker::var_of(int element) const {
  auto it = std::find(priority_.begin(), priority_.end(), element);
  if (it == priority_.end()) fail(ErrorKind::Contract, "unknown picker element");
  return static_cast<int>(it - priority_.begin()) + 1;
}

std::optional<std::vector<int>> Picker::pick() {
  const SolveOutcome r = solver_.solve();
  if (!r.sat) return std::nullopt;
  last_true_.clear();
  for (std::size_t k = 0; k < priority_.size(); ++k) {
    if (r.model[k + 1]) last_true_.push_back(priority_[k]);
  }
  std::sort(last_true_.begin(), last_true_.end());
  return last_true_;
}

void Picker::require_some_true(const std::vector<int>& s) {
  Clause c;
  for (int e : s) c.push_back(Lit::pos(var_of(e)));
  solver_.add_clause(std::move(c));
}

void Picker::require_some_false(const std::vector<int>& s) {
  Clause c;
  for (int e : s) c.push_back(Lit::neg(var_of(e)));
  solver_.add_clause(std::move(c));
}

std::vector<MusMcs> enumerate_mus_mcs(const SoftPartition& p, std::optional<std::size_t> limit,
                                      OracleKind kind) {
  SoftOracle oracle(p, kind);
  const std::size_t n = p.num_soft();
  Picker picker(all_indices(n), true);
  std::vector<MusMcs> out;
  while (!limit || out.size() < *limit) {
    auto seed = picker.pick();
    if (!seed) break;
    std::vector<int> core;
    if (oracle.consistent(*seed, &core)) {
      std::vector<int> mcs = complement(grow(oracle, *seed, n), n);
      if (mcs.empty()) break;
      picker.require_some_true(mcs);
      out.push_back({false, std::move(mcs)});
    } else {
      std::vector<int> mus = shrink(oracle, core);
      const bool hard_inconsistent = mus.empty();
      picker.require_some_false(mus);
      out.push_back({true, std::move(mus)});
      if (hard_inconsistent) break;
    }
  }
  return out;
}

}  // namespace xpkit::sat
