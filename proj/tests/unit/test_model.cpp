#include <gtest/gtest.h>

#include "support.hpp"
#include "xpkit/error.hpp"
#include "xpkit/model_io.hpp"
#include "xpkit/rational.hpp"

using namespace xpkit;
using namespace xpkit::test;

TEST(Predict, DecisionListDefaultRule) {
  const Model m = fixture_model("dl_example");
  EXPECT_EQ(m.space().class_label(m.predict({0, 0, 1, 2})), "1");
  EXPECT_EQ(m.space().class_label(m.predict({1, 1, 0, 0})), "0");
  EXPECT_EQ(m.space().class_label(m.predict({0, 0, 0, 1})), "0");
}

TEST(Predict, TreeAndTable) {
  const Model dt = fixture_model("dt_example");
  EXPECT_EQ(dt.space().class_label(dt.predict({0, 0, 1, 0, 1})), "1");
  const Model nn = fixture_model("or_table");
  EXPECT_EQ(nn.space().class_label(nn.predict({1, 1})), "1");
  EXPECT_EQ(nn.space().class_label(nn.predict({0, 0})), "0");
}

TEST(Predict, OutOfDomainIsDomainError) {
  const Model m = fixture_model("dl_example");
  try {
    m.predict({0, 0, 1, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  EXPECT_THROW(m.predict({0, 0, 1}), Error);
}

TEST(ConsistentPath, Tree) {
  const Model m = fixture_model("dt_example");
  const auto& dt = *m.as<DecisionTree>();
  EXPECT_EQ(consistent_path(dt, m.space(), {0, 0, 1, 0, 1}), (std::vector<int>{1, 2, 4, 7, 10, 15}));
  EXPECT_EQ(consistent_path(dt, m.space(), {0, 0, 0, 0, 0}), (std::vector<int>{1, 2, 4, 6}));
  EXPECT_EQ(consistent_path(dt, m.space(), {1, 0, 0, 0, 0}), (std::vector<int>{1, 3}));
}

TEST(ConsistentPath, SingleLeaf) {
  TreeNode leaf;
  leaf.id = 7;
  leaf.klass = 0;
  const DecisionTree dt({leaf}, 7);
  const FeatureSpace space({{1, "", Domain::Bool()}}, {"0", "1"});
  EXPECT_EQ(consistent_path(dt, space, {1}), std::vector<int>{7});
}

TEST(Validate, Fixtures) {
  for (const char* name : {"dl_example", "dt_example", "or_table", "grading_small", "meningitis"}) {
    EXPECT_TRUE(validate_model(fixture_model(name)).ok()) << name;
  }
}

TEST(Validate, MissingEdgeValue) {
  const std::string doc = R"({"type":"dt","features":[{"id":1,"domain":{"lo":0,"hi":2}}],
    "classes":[0,1],"root":1,"nodes":[
      {"id":1,"feature":1,"children":[{"values":[0],"node":2},{"values":[1],"node":3}]},
      {"id":2,"class":0},{"id":3,"class":1}]})";
  const auto r = validate_model(parse_model(doc));
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.violations.front().find("edges not exhaustive"), std::string::npos);
}

TEST(Validate, NonMonotoneTable) {
  const std::string doc = R"({"type":"monotonic","features":[{"id":1,"domain":"bool"}],
    "classes":[0,1],"table":[1,0]})";
  EXPECT_FALSE(validate_model(parse_model(doc)).ok());
}

TEST(Loader, RejectsUnknownFieldsAndConstantTables) {
  try {
    parse_model(R"({"type":"table","features":[{"id":1,"domain":"bool"}],"classes":[0,1],
                   "table":[0,1],"colour":"red"})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
  try {
    parse_model(R"({"type":"table","features":[{"id":1,"domain":"bool"}],"classes":[0,1],"table":[1,1]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Model);
  }
  EXPECT_THROW(parse_model("{not json"), Error);
}

TEST(Loader, InstanceClassMustMatch) {
  const Model m = fixture_model("dt_example");
  EXPECT_NO_THROW(parse_instance(m, R"({"point":[0,0,1,0,1]})"));
  EXPECT_THROW(parse_instance(m, R"({"point":[0,0,1,0,1],"class":0})"), Error);
  EXPECT_THROW(parse_instance(m, R"({"point":[0,0,1,0,1],"class":7})"), Error);
}

TEST(Loader, ExpressionTabulation) {
  const Model m = fixture_model("grading");
  EXPECT_EQ(m.space().class_label(m.predict({10, 10, 5, 0})), "A");
  EXPECT_EQ(m.space().class_label(m.predict({10, 0, 5, 0})), "E");  // 3.5
  EXPECT_EQ(m.space().class_label(m.predict({0, 0, 0, 9})), "A");
  EXPECT_EQ(m.space().class_label(m.predict({0, 0, 0, 0})), "F");
  EXPECT_TRUE(validate_model(m).ok());
}

TEST(FeatureSpace, OdometerRoundTrip) {
  const Model m = fixture_model("dl_example");
  const FeatureSpace& s = m.space();
  EXPECT_EQ(s.point_count(), 24);
  Point p = s.first_point();
  std::size_t idx = 0;
  do {
    EXPECT_EQ(s.index_of(p), idx);
    EXPECT_EQ(s.point_at(idx), p);
    ++idx;
  } while (s.next_point(p));
  EXPECT_EQ(idx, 24u);
}

TEST(FeatureSpace, BigPointCountAndGuard) {
  std::vector<Feature> fs;
  for (int i = 1; i <= 70; ++i) fs.push_back({i, "", Domain::Bool()});
  const FeatureSpace s(fs, {"0", "1"});
  EXPECT_EQ(s.point_count(), BigInt(1) << 70);
  try {
    s.point_count_within(1 << 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Resource);
  }
}

TEST(Property, ExactlyOneConsistentPath) {
  Rng rng(11);
  for (int round = 0; round < 60; ++round) {
    const FeatureSpace space = random_space(rng, 5, 4);
    const DecisionTree dt = random_tree(rng, space, 4);
    const auto paths = dt.paths();
    Point p = space.first_point();
    do {
      int hits = 0;
      for (const auto& path : paths) {
        bool ok = true;
        for (const auto& l : path.literals) ok = ok && l.holds(p);
        hits += ok;
      }
      ASSERT_EQ(hits, 1);
    } while (space.next_point(p));
  }
}

TEST(Property, MonotoneTablesAreMonotone) {
  const Model m = fixture_model("grading_small");
  const FeatureSpace& s = m.space();
  Point p = s.first_point();
  do {
    for (int i = 0; i < s.num_features(); ++i) {
      if (p[i] == s.domain(i + 1).hi) continue;
      Point q = p;
      ++q[i];
      ASSERT_LE(m.predict(p), m.predict(q));
    }
  } while (s.next_point(p));
}

TEST(Rational, ParseAndRender) {
  EXPECT_EQ(parse_rational("0.85"), Rational(17, 20));
  EXPECT_EQ(parse_rational("17/20"), Rational(17, 20));
  EXPECT_EQ(parse_rational("2.5e-1"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_EQ(to_fraction_string(Rational(14, 16)), "7/8");
  EXPECT_EQ(to_decimal_string(Rational(7, 8)), "0.875");
  EXPECT_EQ(to_decimal_string(Rational(2, 3)), "0.666667");
  EXPECT_EQ(to_decimal_string(Rational(1)), "1");
}

TEST(Constraints, AllowsAndHorn) {
  const Model m = fixture_model("dt_example");
  const ConstraintSet cs = load_constraints(m.space(), data_path("dt_example.constraints.json"));
  EXPECT_TRUE(cs.allows({0, 0, 1, 0, 1}));
  EXPECT_FALSE(cs.allows({0, 0, 1, 1, 1}));
  EXPECT_TRUE(cs.is_horn());
  EXPECT_EQ(to_string(cs.clauses.front()), "(x4≠1)");
  EXPECT_THROW(parse_constraints(m.space(), R"({"clauses":[[{"f":9,"op":"=","v":0}]]})"), Error);
}
