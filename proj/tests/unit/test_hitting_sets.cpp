#include <gtest/gtest.h>

#include "support.hpp"
#include "xpkit/error.hpp"
#include "xpkit/hitting_sets.hpp"

using namespace xpkit;
using namespace xpkit::test;

TEST(MinimalHittingSet, Basics) {
  EXPECT_EQ(minimal_hitting_set({{3}, {5}, {2, 5}}), (FeatureSet{3, 5}));
  EXPECT_TRUE(minimal_hitting_set({}).empty());
  EXPECT_EQ(minimal_hitting_set({{1, 2}}, FeatureSet{2, 7}), FeatureSet{2});
  EXPECT_THROW(minimal_hitting_set({{1}, {}}), Error);
  EXPECT_THROW(minimal_hitting_set({{1}, {2}}, FeatureSet{1}), Error);
}

TEST(MinimumHittingSet, Basics) {
  EXPECT_EQ(minimum_hitting_set({{1}, {4}}), (FeatureSet{1, 4}));
  EXPECT_EQ(minimum_hitting_set({{2, 5}, {5}}), FeatureSet{5});
  EXPECT_EQ(minimum_hitting_set({{7}}), FeatureSet{7});
  EXPECT_EQ(minimum_hitting_set({{1, 2}, {1, 3}, {2, 3}}), (FeatureSet{1, 2}));
  EXPECT_THROW(minimum_hitting_set({{}}), Error);
}

TEST(AllMinimalHittingSets, Basics) {
  EXPECT_EQ(all_minimal_hitting_sets({{1}, {4}}), (SetCollection{{1, 4}}));
  EXPECT_EQ(all_minimal_hitting_sets({{3}, {5}}), (SetCollection{{3, 5}}));
  EXPECT_EQ(all_minimal_hitting_sets({{1, 2}, {1, 3}}), (SetCollection{{1}, {2, 3}}));
  EXPECT_EQ(all_minimal_hitting_sets({{1}, {2, 3}}), (SetCollection{{1, 2}, {1, 3}}));
  EXPECT_EQ(all_minimal_hitting_sets({}), (SetCollection{{}}));
}

TEST(AllMinimalHittingSets, Guard) {
  SetCollection big;
  for (int i = 0; i < 40; ++i) big.push_back({i + 1});
  try {
    all_minimal_hitting_sets(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Resource);
  }
}

TEST(MinimalMembers, PrunesSupersets) {
  EXPECT_EQ(minimal_members({{2, 5}, {5}, {3}, {3}}), (SetCollection{{3}, {5}}));
}

TEST(Property, RandomCollectionsAgainstPowerset) {
  Rng rng(17);
  for (int round = 0; round < 300; ++round) {
    const int u = 1 + static_cast<int>(rng() % 8);
    SetCollection c;
    const int n = static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) {
      FeatureSet s;
      for (int e = 1; e <= u; ++e) {
        if (rng() % 3 == 0) s.push_back(e);
      }
      if (s.empty()) s.push_back(1 + static_cast<int>(rng() % u));
      c.push_back(s);
    }
    SetCollection want;
    std::size_t best = SIZE_MAX;
    FeatureSet best_set;
    for (unsigned mask = 0; mask < (1u << u); ++mask) {
      const FeatureSet s = subset_from_mask(mask, u);
      if (!hits_all(s, c)) continue;
      bool minimal = true;
      for (int e : s) minimal = minimal && !hits_all(without(s, e), c);
      if (minimal) want.push_back(s);
      if (s.size() < best || (s.size() == best && s < best_set)) {
        best = s.size();
        best_set = s;
      }
    }
    std::sort(want.begin(), want.end());
    ASSERT_EQ(all_minimal_hitting_sets(c), want);
    ASSERT_EQ(minimum_hitting_set(c), best_set);
    ASSERT_EQ(minimum_hitting_set_sat(c).size(), best);
    const FeatureSet h = minimal_hitting_set(c);
    ASSERT_NE(std::find(want.begin(), want.end(), h), want.end());
    // double dualization reproduces the minimal members
    if (!c.empty()) {
      ASSERT_EQ(all_minimal_hitting_sets(all_minimal_hitting_sets(c)), minimal_members(c));
    }
  }
}
