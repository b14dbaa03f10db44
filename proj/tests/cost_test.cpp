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

#include "recourse/cost.hpp"

#include <gtest/gtest.h>

#include <random>

#include "recourse/error.hpp"
#include "test_util.hpp"

namespace recourse {
namespace {

using testing::MakeCost;
using testing::Ordered;
using testing::Unordered;

class CostTest : public ::testing::Test {
 protected:
  // Three features, user at (1, 0, 2).
  DatasetSchema schema_{{Ordered("a", 3), Unordered("b", 2),
                         Ordered("c", 3, Mutability::kImmutable)},
                        1,
                        {}};
  UserState user_{{1, 0, 2}};
  CostFunction cost_ = MakeCost(schema_, {{0.2, 0.0, 0.4}, {0.0, 0.3}, {kInfinity, kInfinity, 0.0}});
};

TEST_F(CostTest, TransitionCostExamples) {
  EXPECT_EQ(TransitionCost(schema_, user_, user_, cost_), 0.0);
  EXPECT_DOUBLE_EQ(TransitionCost(schema_, user_, UserState{{0, 1, 2}}, cost_), 0.5);
  EXPECT_TRUE(std::isinf(TransitionCost(schema_, user_, UserState{{1, 0, 0}}, cost_)));
}

TEST_F(CostTest, MinCostExamples) {
  const std::vector<UserState> set{{{2, 0, 2}}, {{0, 0, 2}}, {{2, 1, 2}}};
  EXPECT_DOUBLE_EQ(MinCost(schema_, user_, set, cost_), 0.2);
  EXPECT_DOUBLE_EQ(MinCost(schema_, user_, std::vector<UserState>{set[2]}, cost_), 0.7);
  EXPECT_DOUBLE_EQ(MinCost(schema_, user_, set, cost_, {true, false, true}), 0.4);
  EXPECT_TRUE(std::isinf(MinCost(schema_, user_, set, cost_, {false, false, false})));
  EXPECT_TRUE(std::isinf(
      MinCost(schema_, user_, std::vector<UserState>{{{1, 0, 1}}}, cost_)));
  EXPECT_THROW(MinCost(schema_, user_, std::vector<UserState>{}, cost_), InvalidArgument);
}

TEST_F(CostTest, EmcAveragesPerSampleMinima) {
  CostSampleSet samples;
  samples.state = user_;
  samples.samples = {cost_, MakeCost(schema_, {{0.4, 0.0, 0.4}, {0.0, 0.9}, {0.0, 0.0, 0.0}})};
  const std::vector<UserState> set{{{0, 0, 2}}};
  EXPECT_DOUBLE_EQ(Emc(schema_, user_, set, samples), 0.3);

  CostSampleSet one = samples;
  one.samples.resize(1);
  EXPECT_DOUBLE_EQ(Emc(schema_, user_, set, one), MinCost(schema_, user_, set, cost_));

  CostSampleSet none = samples;
  none.samples.clear();
  EXPECT_THROW(Emc(schema_, user_, set, none), InvalidArgument);
}

TEST_F(CostTest, EmcInfiniteWhenAnySampleUncovered) {
  CostSampleSet samples;
  samples.samples = {cost_, MakeCost(schema_, {{kInfinity, 0.0, kInfinity}, {0.0, 0.1},
                                               {kInfinity, kInfinity, 0.0}})};
  const std::vector<UserState> set{{{0, 0, 2}}};
  EXPECT_TRUE(std::isinf(Emc(schema_, user_, set, samples)));
  const EmcValue detail = EmcDetail(schema_, user_, set, samples);
  EXPECT_EQ(detail.uncovered, 1u);
  EXPECT_DOUBLE_EQ(detail.covered_sum, 0.2);
  EXPECT_DOUBLE_EQ(detail.covered_mean(), 0.1);
  EXPECT_TRUE(std::isinf(detail.value()));
}

TEST_F(CostTest, PairBeatsEitherSingleton) {
  // Sample 0 makes a cheap and b dear; sample 1 the reverse.
  CostSampleSet samples;
  samples.samples = {
      MakeCost(schema_, {{0.1, 0.0, 0.1}, {0.0, 0.9}, {kInfinity, kInfinity, 0.0}}),
      MakeCost(schema_, {{0.9, 0.0, 0.9}, {0.0, 0.1}, {kInfinity, kInfinity, 0.0}})};
  const UserState change_a{{2, 0, 2}}, change_b{{1, 1, 2}};
  const double pair = Emc(schema_, user_, std::vector<UserState>{change_a, change_b}, samples);
  double best_single = kInfinity;
  for (int a : {0, 1, 2}) {
    for (int b : {0, 1}) {
      const UserState s{{a, b, 2}};
      if (s == user_) continue;
      best_single = std::min(best_single, Emc(schema_, user_, std::vector<UserState>{s}, samples));
    }
  }
  EXPECT_LT(pair, best_single);
}

TEST_F(CostTest, MatrixColumnMinimaEqualEmc) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostSampleSet samples;
  for (int j = 0; j < 7; ++j) {
    samples.samples.push_back(MakeCost(
        schema_, {{u(rng), 0.0, u(rng)}, {0.0, u(rng)}, {kInfinity, kInfinity, 0.0}}));
  }
  const std::vector<UserState> set{{{0, 0, 2}}, {{2, 1, 2}}, {{1, 1, 2}}, {{0, 1, 2}}};
  const CostMatrix m = BuildCostMatrix(schema_, user_, set, samples);
  ASSERT_EQ(m.rows(), 4u);
  ASSERT_EQ(m.cols(), 7u);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_EQ(m(i, j), TransitionCost(schema_, user_, set[i], samples.samples[j]));
    }
  }
  EXPECT_DOUBLE_EQ(EmcOf(m).value(), Emc(schema_, user_, set, samples));

  const CostMatrix masked = BuildCostMatrix(schema_, user_, set, samples, {true, false, true, true});
  for (std::size_t j = 0; j < 7; ++j) EXPECT_TRUE(std::isinf(masked(1, j)));
}

TEST_F(CostTest, SupersetNeverIncreasesEmc) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostSampleSet samples;
  for (int j = 0; j < 5; ++j) {
    samples.samples.push_back(MakeCost(
        schema_, {{u(rng), 0.0, u(rng)}, {0.0, u(rng)}, {kInfinity, kInfinity, 0.0}}));
  }
  std::vector<UserState> all;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 2; ++b) all.push_back(UserState{{a, b, 2}});
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<UserState> small, big;
    for (const auto& s : all) {
      const bool in_small = u(rng) < 0.3;
      if (in_small) small.push_back(s);
      if (in_small || u(rng) < 0.5) big.push_back(s);
    }
    if (small.empty()) continue;
    EXPECT_LE(Emc(schema_, user_, big, samples), Emc(schema_, user_, small, samples));
  }
}

TEST(EmcValueTest, LexicographicOrder) {
  EmcValue a{0, 5.0, 10}, b{1, 0.1, 10}, c{0, 4.0, 10};
  EXPECT_LT(a, b);
  EXPECT_LT(c, a);
  EXPECT_EQ(a, (EmcValue{0, 5.0, 10}));
  EXPECT_DOUBLE_EQ(a.value(), 0.5);
  EXPECT_TRUE(std::isinf(b.value()));
  EXPECT_DOUBLE_EQ(b.covered_mean(), 0.01);
}

TEST(DistributionTest, Names) {
  for (auto d : {Distribution::kLin, Distribution::kPerc, Distribution::kMix}) {
    EXPECT_EQ(ParseDistribution(ToString(d)), d);
  }
  EXPECT_THROW(ParseDistribution("gauss"), InvalidArgument);
}

TEST(CostMatrixTest, SetRowAndShapeChecks) {
  CostMatrix m(2, 3, 1.0);
  const std::vector<double> row{0.1, 0.2, 0.3};
  m.set_row(1, row);
  EXPECT_EQ(m(1, 2), 0.3);
  EXPECT_EQ(m(0, 2), 1.0);
  EXPECT_THROW(m.set_row(0, std::vector<double>{1.0}), InvalidArgument);
  EXPECT_THROW(CostMatrix(2, 2, std::vector<double>{1.0}), InvalidArgument);
}

}  // namespace
}  // namespace recourse
