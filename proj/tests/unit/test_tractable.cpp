#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "xpkit/error.hpp"
#include "xpkit/tractable.hpp"

using namespace xpkit;
using namespace xpkit::test;

namespace {

SetCollection sorted(SetCollection s) {
  std::sort(s.begin(), s.end());
  return s;
}

SetCollection features_of(const std::vector<Explanation>& xs) {
  SetCollection out;
  for (const auto& x : xs) out.push_back(x.features);
  return sorted(out);
}

}  // namespace

TEST(DtTractable, FixtureSets) {
  const Model m = fixture_model("dt_example");
  const Instance v = fixture_instance("dt_example");
  const auto& dt = *m.as<DecisionTree>();
  EXPECT_EQ(sorted(dt_inconsistency_sets(dt, m.space(), v)), (SetCollection{{2, 5}, {3}, {5}}));
  EXPECT_EQ(dt_one_axp(dt, m.space(), v).features, (FeatureSet{3, 5}));
  EXPECT_EQ(features_of(dt_all_cxps(dt, m.space(), v)), (SetCollection{{3}, {5}}));
}

TEST(DtTractable, MeningitisFixture) {
  const Model m = fixture_model("meningitis");
  const Instance v = fixture_instance("meningitis");
  const auto& dt = *m.as<DecisionTree>();
  EXPECT_EQ(dt_one_axp(dt, m.space(), v).features, (FeatureSet{1, 5}));
  EXPECT_EQ(features_of(dt_all_cxps(dt, m.space(), v)), naive::all_cxps(m, v));
}

TEST(DtTractable, RandomTreesMatchNaive) {
  Rng rng(5);
  for (int round = 0; round < 200; ++round) {
    const FeatureSpace space = random_space(rng, 5, 4, 2 + static_cast<int>(rng() % 2));
    const Model m = random_model(rng, space, 0);
    const Instance v = predicted_instance(m, random_point(rng, space));
    const auto& dt = *m.as<DecisionTree>();
    const auto axps = naive::all_axps(m, v);
    const auto axp = dt_one_axp(dt, space, v).features;
    ASSERT_NE(std::find(axps.begin(), axps.end(), axp), axps.end()) << "round " << round;
    ASSERT_EQ(features_of(dt_all_cxps(dt, space, v)), naive::all_cxps(m, v)) << "round " << round;
  }
}

TEST(Monotone, GradingFixtures) {
  const Model m = fixture_model("grading");
  const Instance v = fixture_instance("grading");
  EXPECT_EQ(mono_one_axp(m, v).features, (FeatureSet{1, 2}));
  EXPECT_EQ(mono_one_cxp(m, v).features, FeatureSet{2});

  const Model s = fixture_model("grading_small");
  const Instance w = fixture_instance("grading_small");
  const auto axps = naive::all_axps(s, w);
  EXPECT_NE(std::find(axps.begin(), axps.end(), mono_one_axp(s, w).features), axps.end());
  const auto cxps = naive::all_cxps(s, w);
  EXPECT_NE(std::find(cxps.begin(), cxps.end(), mono_one_cxp(s, w).features), cxps.end());
}

TEST(Monotone, Conjunction) {
  const FeatureSpace space({{1, "", Domain::Bool()}, {2, "", Domain::Bool()}}, {"0", "1"});
  std::vector<int> table;
  Point p = space.first_point();
  do {
    table.push_back(p[0] && p[1] ? 1 : 0);
  } while (space.next_point(p));
  const Model m(space, MonotonicClassifier{table});
  const Instance v = predicted_instance(m, {1, 1});
  EXPECT_EQ(mono_one_axp(m, v).features, (FeatureSet{1, 2}));
  // Features visited first are fixed first, so the later one stays free.
  EXPECT_EQ(mono_one_cxp(m, v).features, FeatureSet{2});
  EXPECT_EQ(mono_one_cxp(m, v, {2, 1}).features, FeatureSet{1});

  const Instance w = predicted_instance(m, {0, 0});
  EXPECT_EQ(mono_one_axp(m, w).features, FeatureSet{2});
  EXPECT_EQ(mono_one_axp(m, w, {2, 1}).features, FeatureSet{1});
}

TEST(Monotone, ConstantClassHasNoCxp) {
  const FeatureSpace space({{1, "", Domain::Bool()}}, {"0", "1"});
  const Model m(space, MonotonicClassifier{{1, 1}});
  const Instance v = predicted_instance(m, {0});
  EXPECT_TRUE(mono_one_axp(m, v).features.empty());
  try {
    mono_one_cxp(m, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Contract);
  }
}

TEST(Monotone, RandomTablesMatchNaive) {
  Rng rng(17);
  for (int round = 0; round < 200; ++round) {
    const FeatureSpace space = random_space(rng, 4, 4, 2 + static_cast<int>(rng() % 2));
    const Model m = random_model(rng, space, 3);
    const Instance v = predicted_instance(m, random_point(rng, space));
    const auto axps = naive::all_axps(m, v);
    const auto axp = mono_one_axp(m, v).features;
    ASSERT_NE(std::find(axps.begin(), axps.end(), axp), axps.end()) << "round " << round;
    const auto cxps = naive::all_cxps(m, v);
    if (cxps.empty()) continue;
    const auto cxp = mono_one_cxp(m, v).features;
    ASSERT_NE(std::find(cxps.begin(), cxps.end(), cxp), cxps.end()) << "round " << round;
  }
}
