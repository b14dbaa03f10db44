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

#include "recourse/metrics.hpp"

#include <gtest/gtest.h>

#include "recourse/error.hpp"
#include "recourse/synthetic.hpp"
#include "test_util.hpp"

namespace recourse {
namespace {

using testing::MakeCost;
using testing::Ordered;
using testing::Unordered;

TEST(FsAtKTest, Examples) {
  const std::vector<double> costs{0.5, 1.2, kInfinity};
  EXPECT_DOUBLE_EQ(FsAtK(costs, 1.0), 1.0 / 3.0);
  EXPECT_EQ(FsAtK(std::vector<double>{0.0, 0.0}, 1.0), 1.0);
  EXPECT_EQ(FsAtK(std::vector<double>{0.0, 0.3}, 0.0), 0.0);
  EXPECT_THROW(FsAtK(std::vector<double>{}, 1.0), InvalidArgument);
}

TEST(FsAtKTest, NonDecreasingInKAndBoundedByCoverage) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<double> costs;
  for (int i = 0; i < 200; ++i) costs.push_back(i % 7 == 0 ? kInfinity : u(rng));
  double last = 0.0;
  for (double k = 0.0; k < 4.0; k += 0.1) {
    const double fs = FsAtK(costs, k);
    EXPECT_GE(fs, last);
    EXPECT_LE(fs, Coverage(costs));
    last = fs;
  }
}

TEST(PacTest, Examples) {
  auto a = Pac(std::vector<double>{0.2, 0.4});
  ASSERT_TRUE(a.pac);
  EXPECT_DOUBLE_EQ(*a.pac, 0.3);
  EXPECT_EQ(a.uncovered, 0u);
  auto b = Pac(std::vector<double>{0.2, kInfinity});
  EXPECT_DOUBLE_EQ(*b.pac, 0.2);
  EXPECT_EQ(b.uncovered, 1u);
  EXPECT_EQ(*Pac(std::vector<double>{0.0}).pac, 0.0);
  auto none = Pac(std::vector<double>{kInfinity, kInfinity});
  EXPECT_FALSE(none.pac);
  EXPECT_EQ(none.uncovered, 2u);
}

TEST(CoverageTest, Examples) {
  EXPECT_DOUBLE_EQ(Coverage(std::vector<double>{0.5, kInfinity, 3.0}), 2.0 / 3.0);
  EXPECT_EQ(Coverage(std::vector<double>{0.5, 9.0}), 1.0);
}

class DistanceTest : public ::testing::Test {
 protected:
  DatasetSchema schema_{{Ordered("a", 5), Unordered("b", 3), Ordered("c", 3)}, 1, {}};
  UserState origin_{{0, 0, 0}};
};

TEST_F(DistanceTest, FeatureAndStateDistance) {
  EXPECT_DOUBLE_EQ(FeatureDistance(schema_, 0, 1, 3), 0.5);
  EXPECT_EQ(FeatureDistance(schema_, 1, 2, 0), 1.0);
  EXPECT_EQ(FeatureDistance(schema_, 1, 2, 2), 0.0);
  EXPECT_DOUBLE_EQ(StateDistance(schema_, origin_, UserState{{4, 1, 1}}), (1.0 + 1.0 + 0.5) / 3.0);
}

TEST_F(DistanceTest, SparsitySingleChange) {
  EXPECT_NEAR(Sparsity(origin_, std::vector<UserState>{{{0, 2, 0}}}), 1.0 - 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(Sparsity(origin_, std::vector<UserState>{{{0, 2, 0}}}), 0.667, 5e-4);
}

TEST_F(DistanceTest, IdentitySet) {
  const std::vector<UserState> self{origin_};
  EXPECT_EQ(Proximity(schema_, origin_, self), 1.0);
  EXPECT_EQ(Sparsity(origin_, self), 1.0);
  EXPECT_EQ(Diversity(schema_, self), 0.0);
}

TEST_F(DistanceTest, DiversityPairs) {
  const std::vector<UserState> members{{{0, 0, 0}}, {{4, 0, 0}}, {{4, 1, 2}}};
  // d(0,1)=1/3, d(0,2)=1, d(1,2)=2/3
  EXPECT_DOUBLE_EQ(Diversity(schema_, members), (1.0 / 3.0 + 1.0 + 2.0 / 3.0) / 3.0);
}

TEST_F(DistanceTest, ValidityCountsUniqueValid) {
  std::vector<UserState> members;
  for (int i = 0; i < 9; ++i) members.push_back(UserState{{i % 5, i / 5, 1}});
  members.push_back(members[0]);
  EXPECT_DOUBLE_EQ(Validity(members, std::vector<bool>(10, true)), 0.9);
  std::vector<bool> some(10, true);
  some[3] = false;
  EXPECT_DOUBLE_EQ(Validity(members, some), 0.8);
  EXPECT_THROW(Validity(members, std::vector<bool>(3, true)), InvalidArgument);
}

TEST_F(DistanceTest, MetricsInUnitInterval) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    RecourseSet set;
    const std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      set.members.push_back(UserState{{static_cast<int>(rng() % 5), static_cast<int>(rng() % 3),
                                       static_cast<int>(rng() % 3)}});
      set.valid.push_back(rng() % 2 == 0);
    }
    const auto d = ComputeDistanceMetrics(schema_, origin_, set);
    for (double v : {d.diversity, d.proximity, d.sparsity, d.validity}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(DirTest, Examples) {
  const auto dir = DisparateImpactRatio(76.8, 76.5);
  ASSERT_TRUE(dir);
  EXPECT_NEAR(*dir, 1.004, 5e-4);
  EXPECT_EQ(*DisparateImpactRatio(0.4, 0.4), 1.0);
  EXPECT_FALSE(DisparateImpactRatio(0.4, 0.0));
  EXPECT_NEAR(*DisparateImpactRatio(76.8, 76.5) * *DisparateImpactRatio(76.5, 76.8), 1.0, 1e-15);
}

TEST(DirTest, FirstDomainValueIsNumerator) {
  FeatureSpec gender("gender", FeatureKind::kUnordered, {1, 0}, Mutability::kImmutable);
  EXPECT_NEAR(*DisparateImpactRatio(gender, {{0, 76.5}, {1, 76.8}}), 76.8 / 76.5, 1e-15);
  EXPECT_THROW(DisparateImpactRatio(gender, {{0, 1.0}}), InvalidArgument);
  EXPECT_THROW(DisparateImpactRatio(gender, {{0, 1.0}, {2, 1.0}}), InvalidArgument);
}

TEST(ConcentrationTest, Examples) {
  const std::vector<std::vector<bool>> train{{true, false, true, false, true},
                                             {false, false, false, false, false}};
  const std::vector<std::vector<bool>> test{{true, false, true, false, true},
                                            {true, false, true, true, true}};
  EXPECT_EQ(ConcentrationDistance(test, train), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(ConcentrationDistance({{true, true, true, true, false}}, {train[1]}),
            std::vector<double>{2.0});
  EXPECT_THROW(ConcentrationDistance(test, {}), InvalidArgument);
  EXPECT_THROW(ConcentrationDistance({{true}}, train), InvalidArgument);
}

TEST(SimulateUserTest, DeterministicAndDisjointFromTraining) {
  const auto schema = AdultLikeSchema();
  const auto data = GenerateAdultLike(schema, 400, 3);
  const auto table = BuildPercentileTable(data.rows, schema);
  const auto a = SimulateUser(schema, table, 7, data.rows[7], 1000);
  const auto b = SimulateUser(schema, table, 7, data.rows[7], 1000);
  EXPECT_EQ(a.true_cost, b.true_cost);
  EXPECT_EQ(a.subgroups.at("gender"), data.rows[7][schema.require_feature("gender")]);
  const auto train = SampleCostBatch(schema, table, data.rows[7], 1, Distribution::kMix, 1000);
  EXPECT_NE(a.true_cost, train.samples[0]);
  const auto other = SimulateUser(schema, table, 7, data.rows[7], 1001);
  EXPECT_NE(a.true_cost, other.true_cost);
}

TEST(EvaluatePopulationTest, HandBuiltPopulation) {
  DatasetSchema schema({Ordered("a", 3), Unordered("g", 2, Mutability::kImmutable)}, 1, {"g"});
  const auto cheap = MakeCost(schema, {{0.2, 0.0, 0.5}, {kInfinity, 0.0}});
  std::vector<SimulatedUser> users(4);
  for (std::size_t i = 0; i < 4; ++i) {
    users[i].id = i;
    users[i].state = UserState{{1, static_cast<int>(i % 2)}};
    users[i].true_cost = cheap;
    users[i].subgroups["g"] = static_cast<int>(i % 2);
  }
  users[1].true_cost = MakeCost(schema, {{0.0, 0.0, 0.0}, {0.0, kInfinity}});
  users[3].true_cost = MakeCost(schema, {{3.0, 0.0, 3.0}, {0.0, 0.0}});
  std::vector<RecourseSet> sets(4);
  for (std::size_t i = 0; i < 4; ++i) {
    sets[i].members = {UserState{{0, static_cast<int>(i % 2)}}};
    sets[i].valid = {true};
  }
  sets[2].valid = {false};
  const auto report = EvaluatePopulation(schema, users, sets, 1.0);
  // Costs: 0.2, 0.0, inf, 3.0
  EXPECT_EQ(report.users, 4u);
  EXPECT_DOUBLE_EQ(report.fs_at_k, 0.5);
  EXPECT_DOUBLE_EQ(report.coverage, 0.75);
  EXPECT_DOUBLE_EQ(*report.pac.pac, 3.2 / 3.0);
  EXPECT_EQ(report.pac.uncovered, 1u);
  EXPECT_DOUBLE_EQ(report.subgroups.at("g").at(0).fs_at_k, 0.5);
  EXPECT_DOUBLE_EQ(report.subgroups.at("g").at(1).fs_at_k, 0.5);
  EXPECT_DOUBLE_EQ(report.subgroups.at("g").at(0).coverage, 0.5);
  EXPECT_DOUBLE_EQ(*report.dir.at("g").fs_at_k, 1.0);
  EXPECT_DOUBLE_EQ(*report.dir.at("g").coverage, 0.5);
  EXPECT_THROW(EvaluatePopulation(schema, users, std::vector<RecourseSet>(3), 1.0),
               InvalidArgument);
}

}  // namespace
}  // namespace recourse
