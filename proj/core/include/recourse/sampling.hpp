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

#ifndef RECOURSE_SAMPLING_HPP_
#define RECOURSE_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "recourse/cost.hpp"
#include "recourse/rng.hpp"
#include "recourse/schema.hpp"

namespace recourse {

// Std of the Beta noise around every blended cost mean.
inline constexpr double kCostNoiseStd = 0.01;

// Linear-cost means for one feature: the fraction of steps taken towards
// the far end of the feasible direction, scaled by (1 - preference).
// Returned vector is indexed by domain position. Unordered features draw a
// Uniform(0, 1) raw mean per target from `rng`.
std::vector<double> LinCostMean(const DatasetSchema& schema,
                                const UserState& state, double preference,
                                std::size_t feature,
                                const std::vector<bool>& editable, Rng& rng);

// Percentile-shift means |CDF(x) - CDF(s)|, same case structure and
// scaling as LinCostMean.
std::vector<double> PercCostMean(const DatasetSchema& schema,
                                 const UserState& state, double preference,
                                 std::size_t feature,
                                 const std::vector<bool>& editable,
                                 const PercentileTable& table, Rng& rng);

// Beta draw with the given mean and std. Falls back to the mean itself
// (clamped to [0, 1]) when mean * (1 - mean) <= std^2, where no Beta with
// that moment pair exists.
double SampleBeta(double mean, double stddev, Rng& rng);

// Optional user-supplied constraints on the sampler. Anything left empty
// is drawn randomly.
struct SamplerOverrides {
  std::optional<double> alpha;
  std::optional<std::vector<bool>> editable;
  std::optional<std::vector<double>> preferences;
};

// One hierarchical draw: editable subset, Dirichlet preferences, mixing
// weight, then Beta-noised blended means for every transition.
CostFunction SampleCostFunction(const DatasetSchema& schema,
                                const PercentileTable& table,
                                const UserState& state, Rng& rng,
                                const SamplerOverrides& overrides = {});

// M independent draws for one user. lin fixes alpha = 1, perc fixes
// alpha = 0, mix draws alpha per sample unless `overrides.alpha` is set.
// Sample j uses a stream derived from (seed, tag, state, j), so the set is
// a pure function of its inputs.
CostSampleSet SampleCostBatch(const DatasetSchema& schema,
                              const PercentileTable& table,
                              const UserState& state, std::size_t count,
                              Distribution distribution, std::uint64_t seed,
                              const SamplerOverrides& overrides = {},
                              StreamTag tag = StreamTag::kTrainSamples);

// Checks editable/preference overrides against the schema; throws
// InvalidArgument with a reason.
void ValidateOverrides(const DatasetSchema& schema,
                       const SamplerOverrides& overrides);

}  // namespace recourse

#endif  // RECOURSE_SAMPLING_HPP_
