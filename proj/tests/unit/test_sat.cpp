#include <gtest/gtest.h>

#include <random>

#include "xpkit/dimacs.hpp"
#include "xpkit/error.hpp"
#include "xpkit/sat.hpp"
#include "xpkit/soft.hpp"

using namespace xpkit;
using namespace xpkit::sat;

namespace {

bool truth_table_sat(const CnfFormula& f, const std::vector<Lit>& assumptions) {
  const int n = f.num_vars();
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<bool> a(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) a[v] = mask >> (v - 1) & 1ul;
    bool ok = f.satisfied_by(a);
    for (Lit l : assumptions) ok = ok && a[l.var()] != l.negative();
    if (ok) return true;
  }
  return false;
}

CnfFormula random_cnf(std::mt19937_64& rng, int n, int m, int width) {
  CnfFormula f(n);
  for (int c = 0; c < m; ++c) {
    Clause cl;
    for (int k = 0; k < width; ++k) {
      cl.push_back(Lit::make(1 + static_cast<int>(rng() % n), rng() % 2 == 0));
    }
    f.add(cl);
  }
  return f;
}

// Clauses c1..c5 over x1..x3: three positive units and two binary exclusions.
SoftPartition three_unit_partition() {
  SoftPartition p;
  p.hard = CnfFormula(3);
  p.hard.add({Lit::neg(1), Lit::neg(2)});
  p.hard.add({Lit::neg(1), Lit::neg(3)});
  p.soft = {{Lit::pos(1)}, {Lit::pos(2)}, {Lit::pos(3)}};
  p.labels = {"c1", "c2", "c3"};
  return p;
}

}  // namespace

TEST(Lit, Encoding) {
  EXPECT_EQ(Lit::from_dimacs(-3), Lit::neg(3));
  EXPECT_EQ((~Lit::pos(4)).dimacs(), -4);
  Clause taut{Lit::pos(1), Lit::neg(1)};
  EXPECT_FALSE(normalize_clause(taut));
  Clause dup{Lit::pos(2), Lit::pos(2), Lit::neg(1)};
  EXPECT_TRUE(normalize_clause(dup));
  EXPECT_EQ(dup.size(), 2u);
  EXPECT_EQ(to_string(Clause{Lit::pos(1), Lit::neg(2)}), "(x1 ∨ ¬x2)");
}

TEST(Solver, DirectContradictionCore) {
  CnfFormula f(1);
  f.add({Lit::pos(1)});
  const auto r = solve(f, {Lit::neg(1)});
  EXPECT_FALSE(r.sat);
  ASSERT_EQ(r.core.size(), 1u);
  EXPECT_EQ(r.core[0], Lit::neg(1));
}

TEST(Solver, AllFiveClausesUnsat) {
  const SoftPartition p = three_unit_partition();
  CnfFormula f = p.hard;
  for (const auto& c : p.soft) f.add(c);
  EXPECT_FALSE(solve(f).sat);
}

TEST(Solver, EmptyClauseAndEmptyFormula) {
  CnfFormula f(2);
  EXPECT_TRUE(solve(f).sat);
  f.add(Clause{});
  EXPECT_FALSE(solve(f).sat);
}

TEST(Solver, RandomCnfAgreesWithTruthTable) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    const int n = 3 + static_cast<int>(rng() % 14);
    const int m = static_cast<int>(n * (3.0 + (rng() % 30) / 10.0));
    const CnfFormula f = random_cnf(rng, n, m, 3);
    std::vector<Lit> assumptions;
    for (int k = 0; k < static_cast<int>(rng() % 3); ++k) {
      assumptions.push_back(Lit::make(1 + static_cast<int>(rng() % n), rng() % 2 == 0));
    }
    const auto r = solve(f, assumptions);
    ASSERT_EQ(r.sat, truth_table_sat(f, assumptions)) << "round " << round;
    if (r.sat) {
      ASSERT_TRUE(f.satisfied_by(r.model));
      for (Lit l : assumptions) ASSERT_TRUE(r.value(l));
    } else {
      for (Lit l : r.core) {
        ASSERT_NE(std::find(assumptions.begin(), assumptions.end(), l), assumptions.end());
      }
      ASSERT_FALSE(truth_table_sat(f, r.core));
    }
  }
}

TEST(Solver, IncrementalUse) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    const int n = 8;
    CnfFormula acc(n);
    Solver s;
    s.reserve_vars(n);
    for (int step = 0; step < 12; ++step) {
      const CnfFormula extra = random_cnf(rng, n, 3, 3);
      acc.append(extra);
      s.add_formula(extra);
      const std::vector<Lit> a{Lit::make(1 + static_cast<int>(rng() % n), rng() % 2 == 0)};
      ASSERT_EQ(s.solve(a).sat, truth_table_sat(acc, a));
    }
  }
}

TEST(Solver, Deterministic) {
  std::mt19937_64 rng(5);
  const CnfFormula f = random_cnf(rng, 12, 40, 3);
  EXPECT_EQ(solve(f).model, solve(f).model);
}

TEST(Horn, AgreesWithSolver) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 300; ++round) {
    const int n = 2 + static_cast<int>(rng() % 10);
    CnfFormula f(n);
    for (int c = 0; c < 2 * n; ++c) {
      Clause cl;
      const int width = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < width; ++k) cl.push_back(Lit::neg(1 + static_cast<int>(rng() % n)));
      if (rng() % 3) cl[0] = Lit::pos(cl[0].var());
      f.add(cl);
    }
    ASSERT_TRUE(f.is_horn());
    std::vector<int> pos;
    std::vector<Lit> lits;
    for (int k = 0; k < static_cast<int>(rng() % 3); ++k) {
      pos.push_back(1 + static_cast<int>(rng() % n));
      lits.push_back(Lit::pos(pos.back()));
    }
    const auto h = horn_consistent(f, pos);
    ASSERT_EQ(h.consistent, solve(f, lits).sat);
    if (h.consistent) {
      ASSERT_TRUE(f.satisfied_by(h.model));
    }
  }
}

TEST(Horn, RejectsNonHorn) {
  CnfFormula f(2);
  f.add({Lit::pos(1), Lit::pos(2)});
  try {
    horn_consistent(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Contract);
  }
  EXPECT_TRUE(horn_consistent(CnfFormula{}).consistent);
}

TEST(AtMostK, ProjectedModelCounts) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      CnfFormula f(n);
      std::vector<Lit> xs;
      for (int v = 1; v <= n; ++v) xs.push_back(Lit::pos(v));
      at_most_k(f, xs, k);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<Lit> a;
        for (int v = 1; v <= n; ++v) a.push_back(Lit::make(v, !(mask >> (v - 1) & 1u)));
        ASSERT_EQ(solve(f, a).sat, __builtin_popcount(mask) <= k) << n << " " << k << " " << mask;
      }
    }
  }
}

TEST(Dimacs, RoundTrip) {
  std::mt19937_64 rng(2);
  const CnfFormula f = random_cnf(rng, 6, 10, 3);
  const std::string text = to_dimacs(f, {"hello"});
  EXPECT_NE(text.find("p cnf 6 "), std::string::npos);
  const CnfFormula g = parse_dimacs(text);
  EXPECT_EQ(g.num_vars(), f.num_vars());
  EXPECT_EQ(g.clauses(), f.clauses());
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 3 0\n"), Error);
  EXPECT_THROW(parse_dimacs("1 2 0\n"), Error);
}

TEST(Dimacs, PartitionSidecar) {
  const auto ex = export_partition(three_unit_partition(), {{1, "x1"}});
  EXPECT_NE(ex.cnf.find("p cnf 6 5"), std::string::npos);
  EXPECT_NE(ex.sidecar_json.find("\"c2\""), std::string::npos);
}

TEST(Mus, ThreeUnitPartition) {
  const auto p = three_unit_partition();
  ExtractStats st;
  const auto mus = extract_mus(p, OracleKind::Cdcl, &st);
  EXPECT_TRUE(mus == (std::vector<int>{0, 1}) || mus == (std::vector<int>{0, 2}));
  EXPECT_LE(st.oracle_calls, p.num_soft() + 1);
  const auto mcs = extract_mcs(p);
  EXPECT_TRUE(mcs == std::vector<int>{0} || mcs == (std::vector<int>{1, 2}));
}

TEST(Mus, ContractsAndTrivialCases) {
  SoftPartition ok;
  ok.hard = CnfFormula(1);
  ok.soft = {{Lit::pos(1)}};
  EXPECT_THROW(extract_mus(ok), Error);
  EXPECT_TRUE(extract_mcs(ok).empty());
  EXPECT_TRUE(enumerate_mus_mcs(ok).empty());

  SoftPartition minimal;
  minimal.hard = CnfFormula(1);
  minimal.soft = {{Lit::pos(1)}, {Lit::neg(1)}};
  EXPECT_EQ(extract_mus(minimal), (std::vector<int>{0, 1}));

  SoftPartition bad;
  bad.hard = CnfFormula(1);
  bad.hard.add(Clause{});
  bad.soft = {{Lit::pos(1)}};
  EXPECT_THROW(extract_mcs(bad), Error);
}

TEST(MusMcs, EnumerateThreeUnitPartition) {
  std::vector<std::vector<int>> muses, mcses;
  for (const auto& r : enumerate_mus_mcs(three_unit_partition())) {
    (r.is_mus ? muses : mcses).push_back(r.indices);
  }
  std::sort(muses.begin(), muses.end());
  std::sort(mcses.begin(), mcses.end());
  EXPECT_EQ(muses, (std::vector<std::vector<int>>{{0, 1}, {0, 2}}));
  EXPECT_EQ(mcses, (std::vector<std::vector<int>>{{0}, {1, 2}}));
}

TEST(MusMcs, RandomPartitionsMatchPowersetScan) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 120; ++round) {
    const int n = 3 + static_cast<int>(rng() % 4);
    SoftPartition p;
    p.hard = random_cnf(rng, n, static_cast<int>(rng() % 4), 2);
    if (!solve(p.hard).sat) continue;
    const int k = 2 + static_cast<int>(rng() % 5);
    while (static_cast<int>(p.soft.size()) < k) {
      // Tautologies are dropped by the formula, so redraw until one survives.
      const CnfFormula one = random_cnf(rng, n, 1, 1 + static_cast<int>(rng() % 2));
      if (!one.clauses().empty()) p.soft.push_back(one.clauses()[0]);
    }
    auto consistent = [&](unsigned mask) {
      CnfFormula f = p.hard;
      for (int i = 0; i < k; ++i) {
        if (mask >> i & 1u) f.add(p.soft[i]);
      }
      return truth_table_sat(f, {});
    };
    std::vector<std::vector<int>> want_mus, want_mcs;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < k; ++i) {
        if (mask >> i & 1u) idx.push_back(i);
      }
      if (!consistent(mask)) {
        bool minimal = true;
        for (int i : idx) minimal = minimal && consistent(mask & ~(1u << i));
        if (minimal) want_mus.push_back(idx);
      } else {
        bool maximal = true;
        for (int i = 0; i < k; ++i) {
          if (!(mask >> i & 1u)) maximal = maximal && !consistent(mask | 1u << i);
        }
        if (maximal && mask != (1u << k) - 1) {
          std::vector<int> comp;
          for (int i = 0; i < k; ++i) {
            if (!(mask >> i & 1u)) comp.push_back(i);
          }
          want_mcs.push_back(comp);
        }
      }
    }
    std::vector<std::vector<int>> got_mus, got_mcs;
    for (const auto& r : enumerate_mus_mcs(p)) (r.is_mus ? got_mus : got_mcs).push_back(r.indices);
    std::sort(want_mus.begin(), want_mus.end());
    std::sort(want_mcs.begin(), want_mcs.end());
    std::sort(got_mus.begin(), got_mus.end());
    std::sort(got_mcs.begin(), got_mcs.end());
    ASSERT_EQ(got_mus, want_mus) << "round " << round;
    ASSERT_EQ(got_mcs, want_mcs) << "round " << round;

    if (!want_mus.empty()) {
      const auto mus = extract_mus(p);
      ASSERT_NE(std::find(want_mus.begin(), want_mus.end(), mus), want_mus.end());
      const auto mcs = extract_mcs(p);
      ASSERT_NE(std::find(want_mcs.begin(), want_mcs.end(), mcs), want_mcs.end());
    }
  }
}

TEST(Picker, BlockingClauses) {
  Picker picker({3, 2, 1}, true);
  EXPECT_EQ(*picker.pick(), (std::vector<int>{1, 2, 3}));
  picker.require_some_false({3});
  EXPECT_EQ(*picker.pick(), (std::vector<int>{1, 2}));
  picker.require_some_true({3});
  EXPECT_FALSE(picker.pick().has_value());
}
