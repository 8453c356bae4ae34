#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace xpkit::sat {

/// Literal over variable `var() >= 1`; encoded as 2*var + sign.
class Lit {
 public:
  constexpr Lit() = default;
  static constexpr Lit pos(int var) { return Lit(2 * var); }
  static constexpr Lit neg(int var) { return Lit(2 * var + 1); }
  static constexpr Lit make(int var, bool negative) { return Lit(2 * var + (negative ? 1 : 0)); }
  /// From a nonzero DIMACS integer.
  static Lit from_dimacs(int d);

  constexpr int var() const { return code_ >> 1; }
  constexpr bool negative() const { return (code_ & 1) != 0; }
  constexpr int index() const { return code_; }
  constexpr Lit operator~() const { return Lit(code_ ^ 1); }
  int dimacs() const { return negative() ? -var() : var(); }

  friend constexpr bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
  friend constexpr bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

 private:
  constexpr explicit Lit(int code) : code_(code) {}
  int code_ = 0;
};

using Clause = std::vector<Lit>;

/// Sorts and dedups; returns false for tautologies (x and -x present).
bool normalize_clause(Clause& c);

bool is_horn(const Clause& c);
std::string to_string(const Clause& c);

class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(int num_vars) : num_vars_(num_vars) {}

  int num_vars() const { return num_vars_; }
  int new_var() { return ++num_vars_; }
  void reserve_vars(int n) {
    if (n > num_vars_) num_vars_ = n;
  }

  /// Normalizes the clause; tautologies are dropped. Grows the variable count.
  void add(Clause c);
  void add(std::initializer_list<Lit> c) { add(Clause(c)); }
  void append(const CnfFormula& other);

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool is_horn() const;
  /// Evaluates under `assignment` indexed by variable (entry 0 unused).
  bool satisfied_by(const std::vector<bool>& assignment) const;

 private:
  int num_vars_ = 0;
  std::vector<Clause> clauses_;
};

struct SolveOutcome {
  bool sat = false;
  std::vector<bool> model;  // by variable, entry 0 unused; empty when UNSAT
  std::vector<Lit> core;    // subset of the assumptions when UNSAT

  bool value(int var) const { return model.at(static_cast<std::size_t>(var)); }
  bool value(Lit l) const { return value(l.var()) != l.negative(); }
};

struct SolverOptions {
  /// Polarity tried first on decisions. False means negative-first.
  bool default_phase = false;
};

/// Incremental CDCL solver: two watched literals, first-UIP learning,
/// lowest-index branching, no restarts. Deterministic for a given input
/// sequence.
class Solver {
 public:
  explicit Solver(SolverOptions options = {});
  explicit Solver(const CnfFormula& formula, SolverOptions options = {});

  int num_vars() const { return num_vars_; }
  int new_var();
  void reserve_vars(int n);
  void add_clause(Clause c);
  void add_formula(const CnfFormula& f);

  SolveOutcome solve(const std::vector<Lit>& assumptions = {});

  std::size_t calls() const { return calls_; }
  std::size_t conflicts() const { return conflicts_; }

 private:
  using CRef = int;
  static constexpr CRef kNoReason = -1;

  std::int8_t lit_value(Lit l) const;  // 1 true, 0 false, -1 unassigned
  void assign(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef conflict, Clause& learnt, int& backjump);
  std::vector<Lit> analyze_final(Lit failed, const std::vector<Lit>& assumptions);
  void cancel_until(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void attach(CRef cr);

  SolverOptions options_;
  int num_vars_ = 0;
  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<CRef>> watches_;  // by literal index
  std::vector<std::int8_t> assigns_;        // by var
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::size_t calls_ = 0;
  std::size_t conflicts_ = 0;
};

/// One-shot convenience wrapper.
SolveOutcome solve(const CnfFormula& formula, const std::vector<Lit>& assumptions = {});

struct HornOutcome {
  bool consistent = false;
  std::vector<bool> model;  // least model when consistent
};

/// Linear-time unit propagation for Horn formulas. `assumptions` are
/// variables asserted true. Throws Contract on a non-Horn clause.
HornOutcome horn_consistent(const CnfFormula& formula, const std::vector<int>& assumptions = {});

/// Sequential-counter encoding of sum(xs) <= k, appended to `f`.
void at_most_k(CnfFormula& f, const std::vector<Lit>& xs, int k);

}  // namespace xpkit::sat
