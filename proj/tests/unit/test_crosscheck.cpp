#include <gtest/gtest.h>

#include "support.hpp"
#include "xpkit/crosscheck.hpp"

using namespace xpkit;
using namespace xpkit::test;

namespace {

std::vector<std::string> route_names(const CrosscheckReport& r) {
  std::vector<std::string> out;
  for (const auto& x : r.routes) out.push_back(x.route);
  return out;
}

}  // namespace

TEST(Crosscheck, FixturesAgree) {
  for (const char* name : {"dt_example", "dl_example", "or_table", "grading_small", "meningitis"}) {
    const auto r = crosscheck(fixture_model(name), fixture_instance(name), {});
    EXPECT_TRUE(r.agree()) << name;
    EXPECT_EQ(r.routes.front().route, "brute");
  }
}

TEST(Crosscheck, RoutesDependOnModelAndOptions) {
  const auto dt = crosscheck(fixture_model("dt_example"), fixture_instance("dt_example"), {});
  EXPECT_EQ(route_names(dt), (std::vector<std::string>{"brute", "sat", "encoding-mus-mcs", "dt",
                                                       "dt-tractable", "dt-horn"}));
  ContextOptions o;
  o.epsilon = 2;
  const auto local = crosscheck(fixture_model("dt_example"), fixture_instance("dt_example"), o);
  EXPECT_EQ(route_names(local), (std::vector<std::string>{"brute", "sat", "encoding-mus-mcs"}));
  EXPECT_TRUE(local.agree());
  const auto mono = crosscheck(fixture_model("grading_small"), fixture_instance("grading_small"), {});
  EXPECT_EQ(route_names(mono).back(), "monotone");
}

TEST(Crosscheck, RandomModelsWithConstraints) {
  Rng rng(77);
  for (int round = 0; round < 60; ++round) {
    const FeatureSpace space = random_space(rng, 4, 3);
    const Model m = random_model(rng, space, round % 5);
    const Instance v = predicted_instance(m, random_point(rng, space));
    ContextOptions o;
    if (round % 3 == 1) o.constraints = random_constraints(rng, space, v.point);
    if (round % 3 == 2) o.epsilon = 1 + static_cast<int>(rng() % space.num_features());
    const auto r = crosscheck(m, v, o);
    ASSERT_TRUE(r.agree()) << "round " << round;
  }
}
