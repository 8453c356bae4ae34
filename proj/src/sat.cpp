#include "xpkit/sat.hpp"

#include <algorithm>
#include <cstdlib>

#include "xpkit/error.hpp"

namespace xpkit::sat {

Lit Lit::from_dimacs(int d) {
  if (d == 0) fail(ErrorKind::Contract, "literal 0 is not a variable");
  return make(std::abs(d), d < 0);
}

bool normalize_clause(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i].var() == c[i - 1].var()) return false;
  }
  return true;
}

bool is_horn(const Clause& c) {
  return std::count_if(c.begin(), c.end(), [](Lit l) { return !l.negative(); }) <= 1;
}

std::string to_string(const Clause& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " ∨ ";
    if (c[i].negative()) out += "¬";
    out += "x" + std::to_string(c[i].var());
  }
  return out + ")";
}

void CnfFormula::add(Clause c) {
  for (Lit l : c) {
    if (l.var() < 1) fail(ErrorKind::Contract, "variable index must be >= 1");
    reserve_vars(l.var());
  }
  if (!normalize_clause(c)) return;
  clauses_.push_back(std::move(c));
}

void CnfFormula::append(const CnfFormula& other) {
  reserve_vars(other.num_vars());
  for (const auto& c : other.clauses()) clauses_.push_back(c);
}

bool CnfFormula::is_horn() const {
  return std::all_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return sat::is_horn(c); });
}

bool CnfFormula::satisfied_by(const std::vector<bool>& a) const {
  return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](Lit l) { return a.at(l.var()) != l.negative(); });
  });
}

Solver::Solver(SolverOptions options) : options_(options) { reserve_vars(0); }

Solver::Solver(const CnfFormula& formula, SolverOptions options) : Solver(options) {
  add_formula(formula);
}

int Solver::new_var() {
  reserve_vars(num_vars_ + 1);
  return num_vars_;
}

void Solver::reserve_vars(int n) {
  if (n < num_vars_ && !assigns_.empty()) return;
  num_vars_ = std::max(num_vars_, n);
  const auto size = static_cast<std::size_t>(num_vars_) + 1;
  assigns_.resize(size, -1);
  level_.resize(size, 0);
  reason_.resize(size, kNoReason);
  seen_.resize(size, 0);
  watches_.resize(2 * size);
}

void Solver::add_formula(const CnfFormula& f) {
  reserve_vars(f.num_vars());
  for (const auto& c : f.clauses()) add_clause(c);
}

std::int8_t Solver::lit_value(Lit l) const {
  std::int8_t v = assigns_[l.var()];
  if (v < 0) return -1;
  return static_cast<std::int8_t>(v ^ static_cast<int>(l.negative()));
}

void Solver::assign(Lit l, CRef reason) {
  assigns_[l.var()] = l.negative() ? 0 : 1;
  level_[l.var()] = decision_level();
  reason_[l.var()] = reason;
  trail_.push_back(l);
}

void Solver::attach(CRef cr) {
  const Clause& c = clauses_[cr];
  watches_[c[0].index()].push_back(cr);
  watches_[c[1].index()].push_back(cr);
}

void Solver::add_clause(Clause c) {
  for (Lit l : c) {
    if (l.var() < 1) fail(ErrorKind::Contract, "variable index must be >= 1");
    reserve_vars(l.var());
  }
  if (!ok_ || !normalize_clause(c)) return;
  cancel_until(0);
  Clause kept;
  for (Lit l : c) {
    const auto v = lit_value(l);
    if (v == 1) return;
    if (v == -1) kept.push_back(l);
  }
  if (kept.empty()) {
    ok_ = false;
  } else if (kept.size() == 1) {
    assign(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
  } else {
    clauses_.push_back(std::move(kept));
    attach(static_cast<CRef>(clauses_.size() - 1));
  }
}

Solver::CRef Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit false_lit = ~trail_[qhead_++];
    auto& ws = watches_[false_lit.index()];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const CRef cr = ws[i++];
      Clause& c = clauses_[cr];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[j++] = cr;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1].index()].push_back(cr);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = cr;
      if (lit_value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return cr;
      }
      assign(c[0], cr);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::analyze(CRef conflict, Clause& learnt, int& backjump) {
  learnt.assign(1, Lit());
  int pending = 0;
  Lit p;
  bool have_p = false;
  std::size_t index = trail_.size();
  CRef confl = conflict;
  do {
    const Clause& c = clauses_[confl];
    for (std::size_t k = have_p ? 1 : 0; k < c.size(); ++k) {
      const Lit q = c[k];
      if (!seen_[q.var()] && level_[q.var()] > 0) {
        seen_[q.var()] = 1;
        if (level_[q.var()] >= decision_level()) {
          ++pending;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[trail_[--index].var()]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reason_[p.var()];
    seen_[p.var()] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = ~p;

  backjump = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level_[learnt[k].var()] > level_[learnt[max_i].var()]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    backjump = level_[learnt[1].var()];
  }
  for (Lit l : learnt) seen_[l.var()] = 0;
}

std::vector<Lit> Solver::analyze_final(Lit failed, const std::vector<Lit>& assumptions) {
  std::vector<Lit> marked{failed};
  if (decision_level() > 0) {
    seen_[failed.var()] = 1;
    for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
      const int x = trail_[i].var();
      if (!seen_[x]) continue;
      if (reason_[x] == kNoReason) {
        marked.push_back(trail_[i]);
      } else {
        const Clause& c = clauses_[reason_[x]];
        for (std::size_t k = 1; k < c.size(); ++k) {
          if (level_[c[k].var()] > 0) seen_[c[k].var()] = 1;
        }
      }
      seen_[x] = 0;
    }
    seen_[failed.var()] = 0;
  }
  std::vector<Lit> core;
  for (Lit a : assumptions) {
    if (std::find(marked.begin(), marked.end(), a) != marked.end() &&
        std::find(core.begin(), core.end(), a) == core.end()) {
      core.push_back(a);
    }
  }
  return core;
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[level]);
  for (std::size_t i = trail_.size(); i-- > stop;) {
    assigns_[trail_[i].var()] = -1;
    reason_[trail_[i].var()] = kNoReason;
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = std::min(qhead_, trail_.size());
}

SolveOutcome Solver::solve(const std::vector<Lit>& assumptions) {
  ++calls_;
  for (Lit a : assumptions) {
    if (a.var() < 1) fail(ErrorKind::Contract, "variable index must be >= 1");
    reserve_vars(a.var());
  }
  SolveOutcome out;
  if (!ok_) return out;
  cancel_until(0);
  Clause learnt;
  for (;;) {
    const CRef confl = propagate();
    if (confl != kNoReason) {
      ++conflicts_;
      if (decision_level() == 0) {
        ok_ = false;
        return out;
      }
      int backjump = 0;
      analyze(confl, learnt, backjump);
      cancel_until(backjump);
      if (learnt.size() == 1) {
        assign(learnt[0], kNoReason);
      } else {
        clauses_.push_back(learnt);
        const auto cr = static_cast<CRef>(clauses_.size() - 1);
        attach(cr);
        assign(clauses_[cr][0], cr);
      }
      continue;
    }
    bool have_next = false;
    Lit next;
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      const Lit a = assumptions[static_cast<std::size_t>(decision_level())];
      const auto v = lit_value(a);
      if (v == 1) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (v == 0) {
        out.core = analyze_final(a, assumptions);
        cancel_until(0);
        return out;
      } else {
        next = a;
        have_next = true;
        break;
      }
    }
    if (!have_next) {
      for (int x = 1; x <= num_vars_; ++x) {
        if (assigns_[x] < 0) {
          next = Lit::make(x, !options_.default_phase);
          have_next = true;
          break;
        }
      }
    }
    if (!have_next) {
      out.sat = true;
      out.model.assign(static_cast<std::size_t>(num_vars_) + 1, false);
      for (int x = 1; x <= num_vars_; ++x) out.model[x] = assigns_[x] == 1;
      cancel_until(0);
      return out;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    assign(next, kNoReason);
  }
}

SolveOutcome solve(const CnfFormula& formula, const std::vector<Lit>& assumptions) {
  Solver s(formula);
  return s.solve(assumptions);
}

HornOutcome horn_consistent(const CnfFormula& formula, const std::vector<int>& assumptions) {
  int n = formula.num_vars();
  for (int a : assumptions) n = std::max(n, a);
  const auto size = static_cast<std::size_t>(n) + 1;
  const auto& clauses = formula.clauses();
  std::vector<int> pending(clauses.size());
  std::vector<int> head(clauses.size(), 0);
  std::vector<std::vector<int>> occurs(size);
  std::vector<bool> value(size, false);
  std::vector<int> queue;
  HornOutcome out;

  auto set_true = [&](int x) {
    if (!value[x]) {
      value[x] = true;
      queue.push_back(x);
    }
  };
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    const Clause& c = clauses[ci];
    if (!is_horn(c)) fail(ErrorKind::Contract, "clause " + to_string(c) + " is not Horn");
    for (Lit l : c) {
      if (l.negative()) {
        ++pending[ci];
        occurs[l.var()].push_back(static_cast<int>(ci));
      } else {
        head[ci] = l.var();
      }
    }
  }
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    if (pending[ci] == 0) {
      if (head[ci] == 0) return out;
      set_true(head[ci]);
    }
  }
  for (int a : assumptions) {
    if (a < 1) fail(ErrorKind::Contract, "variable index must be >= 1");
    set_true(a);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (int ci : occurs[queue[qi]]) {
      if (--pending[ci] == 0) {
        if (head[ci] == 0) return out;
        set_true(head[ci]);
      }
    }
  }
  out.consistent = true;
  out.model = std::move(value);
  return out;
}

void at_most_k(CnfFormula& f, const std::vector<Lit>& xs, int k) {
  const int n = static_cast<int>(xs.size());
  if (k >= n) return;
  if (k < 0) {
    f.add(Clause{});
    return;
  }
  if (k == 0) {
    for (Lit x : xs) f.add({~x});
    return;
  }
  // s[i][j]: at least j+1 of x_0..x_i are true.
  std::vector<std::vector<int>> s(static_cast<std::size_t>(n - 1), std::vector<int>(k));
  for (auto& row : s) {
    for (int& v : row) v = f.new_var();
  }
  f.add({~xs[0], Lit::pos(s[0][0])});
  for (int j = 1; j < k; ++j) f.add({Lit::neg(s[0][j])});
  for (int i = 1; i < n - 1; ++i) {
    f.add({~xs[i], Lit::pos(s[i][0])});
    f.add({Lit::neg(s[i - 1][0]), Lit::pos(s[i][0])});
    for (int j = 1; j < k; ++j) {
      f.add({~xs[i], Lit::neg(s[i - 1][j - 1]), Lit::pos(s[i][j])});
      f.add({Lit::neg(s[i - 1][j]), Lit::pos(s[i][j])});
    }
    f.add({~xs[i], Lit::neg(s[i - 1][k - 1])});
  }
  f.add({~xs[n - 1], Lit::neg(s[n - 2][k - 1])});
}

}  // namespace xpkit::sat
