#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xpkit/sat.hpp"

namespace xpkit::sat {

/// Hard clauses B plus soft clauses S (each with a display label).
struct SoftPartition {
  CnfFormula hard;
  std::vector<Clause> soft;
  std::vector<std::string> labels;

  std::size_t num_soft() const { return soft.size(); }
  std::string label(std::size_t i) const;
  bool is_horn() const;
};

enum class OracleKind { Auto, Cdcl, Horn };

/// Consistency oracle over B plus a chosen subset of S. Soft clause i is
/// guarded by a fresh selector s_i; dropping the assumption s_i removes it.
class SoftOracle {
 public:
  explicit SoftOracle(const SoftPartition& p, OracleKind kind = OracleKind::Auto);

  /// `subset` holds soft indices. On UNSAT, `core` (if given) receives a
  /// subset of `subset` that is already inconsistent with B.
  bool consistent(const std::vector<int>& subset, std::vector<int>* core = nullptr);

  bool uses_horn() const { return horn_; }
  std::size_t calls() const { return calls_; }

 private:
  std::size_t n_;
  bool horn_;
  CnfFormula guarded_;
  std::vector<int> selector_;
  std::optional<Solver> solver_;
  std::size_t calls_ = 0;
};

struct ExtractStats {
  std::size_t oracle_calls = 0;
};

/// Deletion-based MUS with core refinement. Indices sorted ascending.
/// Throws Contract when B with all of S is consistent.
std::vector<int> extract_mus(const SoftPartition& p, OracleKind kind = OracleKind::Auto,
                             ExtractStats* stats = nullptr);

/// MCS as the complement of an MSS grown in index order.
/// Throws Contract when B alone is inconsistent.
std::vector<int> extract_mcs(const SoftPartition& p, OracleKind kind = OracleKind::Auto,
                             ExtractStats* stats = nullptr);

/// Picker formula over boolean selectors for duality-driven enumeration.
/// Element at position k of `priority` maps to solver variable k+1, so it is
/// decided before later elements.
class Picker {
 public:
  Picker(std::vector<int> priority, bool prefer_true);

  /// Returns the elements set true in the next picker model, or nullopt when
  /// the picker formula is unsatisfiable.
  std::optional<std::vector<int>> pick();
  std::vector<int> last_true() const { return last_true_; }
  /// Adds (OR_{e in s} u_e).
  void require_some_true(const std::vector<int>& s);
  /// Adds (OR_{e in s} -u_e).
  void require_some_false(const std::vector<int>& s);

 private:
  int var_of(int element) const;

  std::vector<int> priority_;
  Solver solver_;
  std::vector<int> last_true_;
};

struct MusMcs {
  bool is_mus = false;
  std::vector<int> indices;
};

/// Complete MUS/MCS enumeration (stops early at `limit` results).
std::vector<MusMcs> enumerate_mus_mcs(const SoftPartition& p,
                                      std::optional<std::size_t> limit = std::nullopt,
                                      OracleKind kind = OracleKind::Auto);

}  // namespace xpkit::sat
