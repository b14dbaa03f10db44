/*
 * Copyright 2026 The Recourse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "recourse/schema.hpp"

#include <gtest/gtest.h>

#include <string>

#include "recourse/error.hpp"
#include "recourse/synthetic.hpp"
#include "test_util.hpp"

namespace recourse {
namespace {

using testing::Ordered;
using testing::Unordered;

TEST(FeatureSpecTest, RejectsMalformedDomains) {
  EXPECT_THROW(FeatureSpec("a", FeatureKind::kOrdered, {}, Mutability::kMutable),
               InvalidArgument);
  EXPECT_THROW(FeatureSpec("a", FeatureKind::kOrdered, {0, 2, 1}, Mutability::kMutable),
               InvalidArgument);
  EXPECT_THROW(FeatureSpec("a", FeatureKind::kUnordered, {3, 1, 3}, Mutability::kMutable),
               InvalidArgument);
  EXPECT_THROW(FeatureSpec("a", FeatureKind::kUnordered, {0, 1}, Mutability::kIncreaseOnly),
               InvalidArgument);
  EXPECT_THROW(FeatureSpec("a", FeatureKind::kUnordered, {0, 1}, Mutability::kDecreaseOnly),
               InvalidArgument);
  EXPECT_NO_THROW(FeatureSpec("a", FeatureKind::kUnordered, {5, 1, 3}, Mutability::kMutable));
}

TEST(FeatureSpecTest, IndexLookup) {
  FeatureSpec f("a", FeatureKind::kUnordered, {7, -2, 4}, Mutability::kMutable);
  EXPECT_EQ(f.index_of(-2), 1u);
  EXPECT_EQ(f.index_of(7), 0u);
  EXPECT_FALSE(f.index_of(0).has_value());
  EXPECT_FALSE(f.contains(100));
  EXPECT_EQ(f.span(), 9);
}

TEST(SchemaTest, RejectsDuplicatesAndUnknownProtected) {
  EXPECT_THROW(DatasetSchema({Ordered("a", 2), Ordered("a", 3)}, 1, {}), InvalidArgument);
  EXPECT_THROW(DatasetSchema({Ordered("a", 2)}, 1, {"b"}), InvalidArgument);
  EXPECT_THROW(DatasetSchema({Ordered("a", 2)}, 2, {}), InvalidArgument);
}

TEST(SchemaTest, ParsesRangeAndListDomains) {
  const auto schema = ParseSchema(R"({
    "desired_class": 1,
    "protected_attributes": ["g"],
    "features": [
      {"name": "age", "kind": "ordered", "domain": {"min": 2, "max": 5},
       "mutability": "increase_only"},
      {"name": "g", "kind": "unordered", "domain": [1, 0], "mutability": "immutable"}
    ]})");
  ASSERT_EQ(schema.num_features(), 2u);
  EXPECT_EQ(schema.feature(0).size(), 4u);
  EXPECT_EQ(schema.feature(0).min_value(), 2);
  EXPECT_EQ(schema.feature(1).value_at(0), 1);
  EXPECT_EQ(schema.feature(0).mutability(), Mutability::kIncreaseOnly);
  EXPECT_EQ(schema.changeable_features(), std::vector<std::size_t>{0});
}

TEST(SchemaTest, SingleFeatureSingleValueIsValid) {
  const auto schema = ParseSchema(R"({"features": [
      {"name": "x", "kind": "ordered", "domain": [0], "mutability": "mutable"}]})");
  EXPECT_EQ(schema.num_features(), 1u);
  EXPECT_EQ(schema.total_domain_size(), 1u);
}

TEST(SchemaTest, ParseErrors) {
  EXPECT_THROW(ParseSchema("{"), ParseError);
  EXPECT_THROW(ParseSchema(R"({"features": [
      {"name": "x", "kind": "unordered", "domain": [0, 1], "mutability": "increase_only"}]})"),
               ParseError);
  EXPECT_THROW(ParseSchema(R"({"features": [
      {"name": "x", "kind": "ordered", "domain": [0, 1], "mutability": "mutable"},
      {"name": "x", "kind": "ordered", "domain": [0, 1], "mutability": "mutable"}]})"),
               ParseError);
  EXPECT_THROW(ParseSchema(R"({"features": [
      {"name": "x", "kind": "sorted", "domain": [0, 1], "mutability": "mutable"}]})"),
               ParseError);
}

TEST(SchemaTest, AdultLikeRoundTrip) {
  const auto schema = AdultLikeSchema();
  const auto again = ParseSchema(SerializeSchema(schema));
  ASSERT_EQ(again.num_features(), 12u);
  EXPECT_EQ(SerializeSchema(again), SerializeSchema(schema));
  EXPECT_EQ(again.protected_attributes(), (std::vector<std::string>{"gender", "race"}));
}

TEST(SchemaTest, DomainOffsets) {
  DatasetSchema schema({Ordered("a", 3), Unordered("b", 2), Ordered("c", 4)}, 1, {});
  EXPECT_EQ(schema.domain_offsets(), (std::vector<std::size_t>{0, 3, 5, 9}));
  EXPECT_EQ(schema.total_domain_size(), 9u);
}

class DatasetTest : public ::testing::Test {
 protected:
  DatasetSchema schema_{{Ordered("a", 5), Unordered("b", 3)}, 1, {}, std::string("y")};
};

TEST_F(DatasetTest, ParsesRows) {
  const auto data = ParseDataset("a,b\n0,1\n4,2\n3,0\n", schema_);
  ASSERT_EQ(data.rows.size(), 3u);
  EXPECT_EQ(data.rows[1].values, (std::vector<int>{4, 2}));
  EXPECT_FALSE(data.labels.has_value());
}

TEST_F(DatasetTest, ColumnOrderFollowsHeader) {
  const auto data = ParseDataset("b,y,a\n2,1,3\n", schema_);
  EXPECT_EQ(data.rows[0].values, (std::vector<int>{3, 2}));
  ASSERT_TRUE(data.labels.has_value());
  EXPECT_EQ((*data.labels)[0], 1);
}

TEST_F(DatasetTest, LabelsRecodedToDesiredOne) {
  DatasetSchema zero_desired({Ordered("a", 5)}, 0, {}, std::string("y"));
  const auto data = ParseDataset("a,y\n1,0\n2,1\n", zero_desired);
  EXPECT_EQ(*data.labels, (std::vector<int>{1, 0}));
  EXPECT_EQ(SerializeDataset(data, zero_desired), "a,y\n1,0\n2,1\n");
}

TEST_F(DatasetTest, OutOfDomainNamesRowAndFeature) {
  try {
    ParseDataset("a,b\n0,1\n1,7\n", schema_);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 1 "), std::string::npos) << msg;
    EXPECT_NE(msg.find("'b'"), std::string::npos) << msg;
  }
}

TEST_F(DatasetTest, StructuralErrors) {
  EXPECT_THROW(ParseDataset("", schema_), ParseError);
  EXPECT_THROW(ParseDataset("a,b,extra\n0,1,2\n", schema_), ParseError);
  EXPECT_THROW(ParseDataset("a\n0\n", schema_), ParseError);
  EXPECT_THROW(ParseDataset("a,b\n0,x\n", schema_), ParseError);
  EXPECT_THROW(ParseDataset("a,b\n0\n", schema_), ParseError);
}

TEST_F(DatasetTest, SerializeRoundTrip) {
  Dataset data;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    data.rows.push_back(UserState{{static_cast<int>(rng() % 5), static_cast<int>(rng() % 3)}});
  }
  const auto again = ParseDataset(SerializeDataset(data, schema_), schema_);
  EXPECT_EQ(again.rows, data.rows);
}

TEST(PercentileTest, HandCountedCdf) {
  DatasetSchema schema({Ordered("a", 5)}, 1, {});
  std::vector<UserState> rows{{{0}}, {{1}}, {{1}}, {{2}}, {{4}}};
  const auto table = BuildPercentileTable(rows, schema);
  const std::vector<double> expected{0.2, 0.6, 0.8, 0.8, 1.0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(table.cdf(0, i), expected[i]);
}

TEST(PercentileTest, SingleRowStep) {
  DatasetSchema schema({Ordered("a", 6)}, 1, {});
  std::vector<UserState> rows{{{3}}};
  const auto table = BuildPercentileTable(rows, schema);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(table.cdf(0, i), i < 3 ? 0.0 : 1.0);
}

TEST(PercentileTest, UnorderedHasNoEntryAndEmptyThrows) {
  DatasetSchema schema({Unordered("a", 3)}, 1, {});
  std::vector<UserState> rows{{{1}}};
  const auto table = BuildPercentileTable(rows, schema);
  EXPECT_FALSE(table.has_feature(0));
  EXPECT_THROW(table.cdf(0, 0), InvalidArgument);
  EXPECT_THROW(BuildPercentileTable(std::vector<UserState>{}, schema), InvalidArgument);
}

TEST(PercentileTest, MonotoneAndEndsAtOne) {
  const auto schema = AdultLikeSchema();
  const auto data = GenerateAdultLike(schema, 3000, 4);
  const auto table = BuildPercentileTable(data.rows, schema);
  for (std::size_t f = 0; f < schema.num_features(); ++f) {
    if (!schema.feature(f).ordered()) continue;
    const auto cdf = table.feature_cdf(f);
    for (std::size_t i = 1; i < cdf.size(); ++i) EXPECT_LE(cdf[i - 1], cdf[i]);
    EXPECT_GE(cdf.front(), 0.0);
    EXPECT_EQ(cdf.back(), 1.0);
  }
}

TEST(FeasibleTest, Definitions) {
  DatasetSchema schema({Ordered("inc", 5, Mutability::kIncreaseOnly),
                        Ordered("dec", 5, Mutability::kDecreaseOnly),
                        Unordered("imm", 3, Mutability::kImmutable), Unordered("mut", 2)},
                       1, {});
  EXPECT_EQ(FeasibleValues(schema, 0, 2), (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(FeasibleValues(schema, 1, 2), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(FeasibleValues(schema, 2, 1), (std::vector<int>{1}));
  EXPECT_EQ(FeasibleValues(schema, 3, 1), (std::vector<int>{0, 1}));
  EXPECT_THROW(FeasibleValues(schema, 9, 0), InvalidArgument);
  EXPECT_THROW(FeasibleValues(schema, 0, 7), InvalidArgument);
}

TEST(FeasibleTest, AlwaysContainsOriginal) {
  for (const auto& schema : {AdultLikeSchema(), ToySchema()}) {
    for (std::size_t f = 0; f < schema.num_features(); ++f) {
      for (int v : schema.feature(f).domain()) {
        const auto values = FeasibleValues(schema, f, v);
        EXPECT_NE(std::find(values.begin(), values.end(), v), values.end());
      }
    }
  }
}

TEST(FeasibleTest, TransitionCheck) {
  DatasetSchema schema({Ordered("inc", 5, Mutability::kIncreaseOnly),
                        Unordered("imm", 3, Mutability::kImmutable)},
                       1, {});
  EXPECT_TRUE(IsFeasibleTransition(schema, UserState{{1, 2}}, UserState{{4, 2}}));
  EXPECT_FALSE(IsFeasibleTransition(schema, UserState{{1, 2}}, UserState{{0, 2}}));
  EXPECT_FALSE(IsFeasibleTransition(schema, UserState{{1, 2}}, UserState{{1, 0}}));
}

TEST(StateTest, ValidateAndHash) {
  DatasetSchema schema({Ordered("a", 3), Ordered("b", 3)}, 1, {});
  EXPECT_NO_THROW(schema.validate(UserState{{0, 2}}));
  EXPECT_THROW(schema.validate(UserState{{0}}), InvalidArgument);
  EXPECT_THROW(schema.validate(UserState{{0, 3}}), InvalidArgument);
  EXPECT_EQ(HashState(UserState{{1, 2}}), HashState(UserState{{1, 2}}));
  EXPECT_NE(HashState(UserState{{1, 2}}), HashState(UserState{{2, 1}}));
}

}  // namespace
}  // namespace recourse
