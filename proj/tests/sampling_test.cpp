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

#include "recourse/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "recourse/error.hpp"
#include "recourse/synthetic.hpp"
#include "test_util.hpp"

namespace recourse {
namespace {

using testing::Ordered;
using testing::Unordered;

DatasetSchema OneIncreasing() {
  return DatasetSchema({Ordered("a", 5, Mutability::kIncreaseOnly)}, 1, {});
}

TEST(LinCostMeanTest, IncreaseOnlyExamples) {
  const auto schema = OneIncreasing();
  Rng rng(0);
  const UserState s{{1}};
  const auto mean = LinCostMean(schema, s, 0.0, 0, {true}, rng);
  EXPECT_TRUE(std::isinf(mean[0]));
  EXPECT_EQ(mean[1], 0.0);
  EXPECT_DOUBLE_EQ(mean[2], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(mean[3], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(mean[4], 1.0);

  const auto half = LinCostMean(schema, s, 0.5, 0, {true}, rng);
  EXPECT_DOUBLE_EQ(half[3], 1.0 / 3.0);
}

TEST(LinCostMeanTest, TwoSidedAndDecreasing) {
  DatasetSchema schema({Ordered("m", 5), Ordered("d", 5, Mutability::kDecreaseOnly)}, 1, {});
  Rng rng(0);
  const UserState s{{2, 2}};
  const auto m = LinCostMean(schema, s, 0.0, 0, {true, true}, rng);
  EXPECT_DOUBLE_EQ(m[0], 1.0);
  EXPECT_DOUBLE_EQ(m[1], 0.5);
  EXPECT_DOUBLE_EQ(m[3], 0.5);
  EXPECT_DOUBLE_EQ(m[4], 1.0);
  const auto d = LinCostMean(schema, s, 0.0, 1, {true, true}, rng);
  EXPECT_DOUBLE_EQ(d[0], 1.0);
  EXPECT_TRUE(std::isinf(d[3]));
  EXPECT_TRUE(std::isinf(d[4]));
}

TEST(LinCostMeanTest, NotEditableIsInfiniteOffDiagonal) {
  DatasetSchema schema({Ordered("a", 4), Unordered("b", 3)}, 1, {});
  Rng rng(0);
  const auto mean = LinCostMean(schema, UserState{{1, 2}}, 0.0, 1, {true, false}, rng);
  EXPECT_TRUE(std::isinf(mean[0]));
  EXPECT_TRUE(std::isinf(mean[1]));
  EXPECT_EQ(mean[2], 0.0);
}

TEST(LinCostMeanTest, UnorderedMeansInUnitInterval) {
  DatasetSchema schema({Unordered("b", 6)}, 1, {});
  Rng rng(9);
  const auto mean = LinCostMean(schema, UserState{{3}}, 0.25, 0, {true}, rng);
  for (std::size_t x = 0; x < 6; ++x) {
    if (x == 3) {
      EXPECT_EQ(mean[x], 0.0);
    } else {
      EXPECT_GE(mean[x], 0.0);
      EXPECT_LE(mean[x], 0.75);
    }
  }
}

TEST(LinCostMeanTest, RejectsBadPreference) {
  const auto schema = OneIncreasing();
  Rng rng(0);
  EXPECT_THROW(LinCostMean(schema, UserState{{1}}, 1.5, 0, {true}, rng), InvalidArgument);
  EXPECT_THROW(LinCostMean(schema, UserState{{1}}, -0.1, 0, {true}, rng), InvalidArgument);
}

TEST(PercCostMeanTest, IncreaseOnlyExamples) {
  const auto schema = OneIncreasing();
  const PercentileTable table({{0.2, 0.5, 0.7, 0.9, 1.0}});
  Rng rng(0);
  const auto mean = PercCostMean(schema, UserState{{1}}, 0.0, 0, {true}, table, rng);
  EXPECT_NEAR(mean[3], 0.4, 1e-12);
  EXPECT_EQ(mean[1], 0.0);
  EXPECT_TRUE(std::isinf(mean[0]));
}

TEST(PercCostMeanTest, MissingTableEntry) {
  const auto schema = OneIncreasing();
  Rng rng(0);
  EXPECT_THROW(PercCostMean(schema, UserState{{1}}, 0.0, 0, {true}, PercentileTable(), rng),
               InvalidArgument);
}

TEST(SampleBetaTest, MomentsMatch) {
  Rng rng(17);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = SampleBeta(0.3, 0.01, rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  EXPECT_NEAR(mean, 0.3, 1e-3);
  EXPECT_NEAR(sd, 0.01, 1e-3);
}

TEST(SampleBetaTest, DegenerateMeansFallBack) {
  Rng rng(1);
  EXPECT_EQ(SampleBeta(1.0, 0.01, rng), 1.0);
  EXPECT_EQ(SampleBeta(0.0, 0.01, rng), 0.0);
  EXPECT_EQ(SampleBeta(0.00005, 0.01, rng), 0.00005);
}

TEST(SampleCostFunctionTest, AlphaOneNearLinearMeans) {
  const auto schema = OneIncreasing();
  const PercentileTable table({{0.2, 0.5, 0.7, 0.9, 1.0}});
  SamplerOverrides overrides;
  overrides.alpha = 1.0;
  overrides.editable = std::vector<bool>{true};
  overrides.preferences = std::vector<double>{1.0};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto c = SampleCostFunction(schema, table, UserState{{1}}, rng, overrides);
    EXPECT_TRUE(std::isinf(c.cost(0, 0)));
    EXPECT_EQ(c.cost(0, 1), 0.0);
    // Scaled means are all zero with the whole preference on this feature.
    for (std::size_t x = 2; x < 5; ++x) EXPECT_NEAR(c.cost(0, x), 0.0, 0.05);
  }
  // With the preference elsewhere the unscaled means show through.
  DatasetSchema two({Ordered("a", 5, Mutability::kIncreaseOnly), Ordered("b", 3)}, 1, {});
  const PercentileTable table2({{0.2, 0.5, 0.7, 0.9, 1.0}, {0.3, 0.6, 1.0}});
  overrides.editable = std::vector<bool>{true, true};
  overrides.preferences = std::vector<double>{0.0, 1.0};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto c = SampleCostFunction(two, table2, UserState{{1, 0}}, rng, overrides);
    EXPECT_NEAR(c.cost(0, 2), 1.0 / 3.0, 0.05);
    EXPECT_NEAR(c.cost(0, 3), 2.0 / 3.0, 0.05);
    EXPECT_NEAR(c.cost(0, 4), 1.0, 0.05);
  }
}

TEST(SampleCostFunctionTest, DeterministicForSeed) {
  const auto schema = AdultLikeSchema();
  const auto data = GenerateAdultLike(schema, 500, 2);
  const auto table = BuildPercentileTable(data.rows, schema);
  Rng a(42), b(42);
  EXPECT_EQ(SampleCostFunction(schema, table, data.rows[0], a),
            SampleCostFunction(schema, table, data.rows[0], b));
}

TEST(SampleCostFunctionTest, AllImmutableIsError) {
  DatasetSchema schema({Unordered("a", 2, Mutability::kImmutable),
                        Ordered("b", 3, Mutability::kImmutable)},
                       1, {});
  const PercentileTable table({{}, {0.3, 0.6, 1.0}});
  Rng rng(0);
  EXPECT_THROW(SampleCostFunction(schema, table, UserState{{0, 1}}, rng), InvalidArgument);
}

TEST(SampleCostFunctionTest, EditableOverrideMakesRestInfinite) {
  const auto schema = AdultLikeSchema();
  const auto data = GenerateAdultLike(schema, 500, 2);
  const auto table = BuildPercentileTable(data.rows, schema);
  SamplerOverrides overrides;
  std::vector<bool> editable(schema.num_features(), false);
  editable[schema.require_feature("education")] = true;
  editable[schema.require_feature("capital_loss")] = true;
  overrides.editable = editable;
  const auto batch = SampleCostBatch(schema, table, data.rows[3], 50, Distribution::kMix, 1,
                                     overrides);
  for (const auto& c : batch.samples) {
    EXPECT_EQ(c.editable(), editable);
    for (std::size_t f = 0; f < schema.num_features(); ++f) {
      if (editable[f]) continue;
      EXPECT_EQ(c.preferences()[f], 0.0);
      const std::size_t s = *schema.feature(f).index_of(data.rows[3][f]);
      for (std::size_t x = 0; x < schema.feature(f).size(); ++x) {
        if (x == s) {
          EXPECT_EQ(c.cost(f, x), 0.0);
        } else {
          EXPECT_TRUE(std::isinf(c.cost(f, x)));
        }
      }
    }
  }
}

TEST(SampleCostFunctionTest, PreferenceOverrideKept) {
  const auto schema = ToySchema();
  const auto data = GenerateToy(schema, 300, 1);
  const auto table = BuildPercentileTable(data.rows, schema);
  SamplerOverrides overrides;
  overrides.preferences = std::vector<double>{0.5, 0.0, 0.5, 0.0, 0.0, 0.0};
  Rng rng(0);
  const auto c = SampleCostFunction(schema, table, data.rows[0], rng, overrides);
  EXPECT_EQ(c.preferences(), *overrides.preferences);
  EXPECT_EQ(c.editable(), (std::vector<bool>{true, false, true, false, false, false}));
}

TEST(ValidateOverridesTest, Rejections) {
  const auto schema = ToySchema();
  auto check = [&](SamplerOverrides o) {
    EXPECT_THROW(ValidateOverrides(schema, o), InvalidArgument);
  };
  SamplerOverrides o;
  o.alpha = 1.5;
  check(o);
  o = {};
  o.editable = std::vector<bool>(6, false);
  check(o);
  o.editable = std::vector<bool>{false, false, false, true, false, false};
  check(o);
  o.editable = std::vector<bool>(3, true);
  check(o);
  o = {};
  o.preferences = std::vector<double>{0.5, 0.4, 0.0, 0.0, 0.0, 0.0};
  check(o);
  o.preferences = std::vector<double>{0.5, 0.0, 0.0, 0.5, 0.0, 0.0};
  check(o);
  o.preferences = std::vector<double>{1.5, -0.5, 0.0, 0.0, 0.0, 0.0};
  check(o);
  o.editable = std::vector<bool>{true, false, false, false, false, false};
  o.preferences = std::vector<double>{0.5, 0.5, 0.0, 0.0, 0.0, 0.0};
  check(o);
}

TEST(SampleCostBatchTest, SizesAndDeterminism) {
  const auto schema = ToySchema();
  const auto data = GenerateToy(schema, 300, 1);
  const auto table = BuildPercentileTable(data.rows, schema);
  const auto one = SampleCostBatch(schema, table, data.rows[0], 1, Distribution::kMix, 3);
  EXPECT_EQ(one.size(), 1u);
  const auto a = SampleCostBatch(schema, table, data.rows[0], 40, Distribution::kMix, 3);
  const auto b = SampleCostBatch(schema, table, data.rows[0], 40, Distribution::kMix, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.samples[0], one.samples[0]);
  const auto c = SampleCostBatch(schema, table, data.rows[0], 40, Distribution::kMix, 4);
  EXPECT_NE(a, c);
  const auto eval = SampleCostBatch(schema, table, data.rows[0], 40, Distribution::kMix, 3, {},
                                    StreamTag::kEvalSamples);
  EXPECT_NE(a.samples, eval.samples);
  EXPECT_THROW(SampleCostBatch(schema, table, data.rows[0], 0, Distribution::kMix, 3),
               InvalidArgument);
}

TEST(SampleCostBatchTest, DistributionFixesAlpha) {
  const auto schema = ToySchema();
  const auto data = GenerateToy(schema, 300, 1);
  const auto table = BuildPercentileTable(data.rows, schema);
  for (const auto& c :
       SampleCostBatch(schema, table, data.rows[1], 20, Distribution::kLin, 0).samples) {
    EXPECT_EQ(c.alpha(), 1.0);
  }
  for (const auto& c :
       SampleCostBatch(schema, table, data.rows[1], 20, Distribution::kPerc, 0).samples) {
    EXPECT_EQ(c.alpha(), 0.0);
  }
  double lo = 1.0, hi = 0.0;
  for (const auto& c :
       SampleCostBatch(schema, table, data.rows[1], 200, Distribution::kMix, 0).samples) {
    lo = std::min(lo, c.alpha());
    hi = std::max(hi, c.alpha());
  }
  EXPECT_LT(lo, 0.1);
  EXPECT_GT(hi, 0.9);
}

TEST(SampleCostBatchTest, EveryNonEmptyEditableSubsetAppears) {
  DatasetSchema schema({Ordered("a", 3), Ordered("b", 3), Unordered("c", 2, Mutability::kImmutable)},
                       1, {});
  const PercentileTable table({{0.3, 0.6, 1.0}, {0.3, 0.6, 1.0}, {}});
  const auto batch = SampleCostBatch(schema, table, UserState{{1, 1, 0}}, 300, Distribution::kMix, 8);
  int counts[4] = {0, 0, 0, 0};
  for (const auto& c : batch.samples) {
    EXPECT_FALSE(c.editable()[2]);
    counts[(c.editable()[0] ? 1 : 0) + (c.editable()[1] ? 2 : 0)]++;
  }
  EXPECT_EQ(counts[0], 0);
  for (int k = 1; k < 4; ++k) EXPECT_GT(counts[k], 70) << k;
}

}  // namespace
}  // namespace recourse
