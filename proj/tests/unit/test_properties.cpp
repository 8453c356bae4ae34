#include <gtest/gtest.h>

#include "properties.hpp"

using xpkit::test::run_property_suite;

TEST(Properties, RandomizedSuite) {
  const auto rep = run_property_suite(20240601, 500);
  for (const auto& item : rep.items) {
    EXPECT_GT(item.checks, 0) << item.name;
    for (const auto& f : item.failures) ADD_FAILURE() << item.name << ": " << f;
  }
}

TEST(Properties, BooleanOnlySpaces) {
  const auto rep = run_property_suite(7, 150, 6, 2);
  EXPECT_TRUE(rep.ok());
  for (const auto& item : rep.items) {
    for (const auto& f : item.failures) ADD_FAILURE() << item.name << ": " << f;
  }
}
