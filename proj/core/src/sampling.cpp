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

#include <algorithm>
#include <cmath>
#include <string>

#include "recourse/error.hpp"

namespace recourse {
namespace {

enum class CostKind { kLinear, kPercentile };

std::vector<double> CostMean(CostKind kind, const DatasetSchema& schema,
                             const UserState& state, double preference,
                             std::size_t feature,
                             const std::vector<bool>& editable,
                             const PercentileTable* table, Rng& rng) {
  if (feature >= schema.num_features()) {
    throw InvalidArgument("feature index out of range");
  }
  if (!(preference >= 0.0 && preference <= 1.0)) {
    throw InvalidArgument("preference must lie in [0, 1]");
  }
  const FeatureSpec& spec = schema.feature(feature);
  const std::size_t n = spec.size();
  auto origin = spec.index_of(state[feature]);
  if (!origin) throw InvalidArgument("state value outside domain of '" + spec.name() + "'");
  const std::size_t s = *origin;

  std::vector<double> mean(n, kInfinity);
  mean[s] = 0.0;
  if (!editable.at(feature) || spec.immutable()) return mean;

  if (spec.ordered()) {
    const bool up = spec.mutability() != Mutability::kDecreaseOnly;
    const bool down = spec.mutability() != Mutability::kIncreaseOnly;
    if (kind == CostKind::kPercentile && !table->has_feature(feature)) {
      throw InvalidArgument("missing percentile entry for ordered feature '" +
                            spec.name() + "'");
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (x == s) continue;
      if ((x > s && !up) || (x < s && !down)) continue;
      if (kind == CostKind::kLinear) {
        // Steps taken over steps available on this side of s.
        mean[x] = x > s ? static_cast<double>(x - s) / static_cast<double>(n - 1 - s)
                        : static_cast<double>(s - x) / static_cast<double>(s);
      } else {
        mean[x] = std::abs(table->cdf(feature, x) - table->cdf(feature, s));
      }
    }
  } else {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t x = 0; x < n; ++x) {
      if (x != s) mean[x] = unit(rng);
    }
  }
  for (double& m : mean) {
    if (std::isfinite(m)) m *= (1.0 - preference);
  }
  return mean;
}

std::vector<bool> RandomEditableSubset(const DatasetSchema& schema, Rng& rng) {
  const auto changeable = schema.changeable_features();
  if (changeable.empty()) {
    throw InvalidArgument("schema has no mutable features to edit");
  }
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> editable(schema.num_features(), false);
  // Rejection of the empty draw leaves every non-empty subset equally likely.
  while (true) {
    bool any = false;
    for (std::size_t f : changeable) {
      editable[f] = coin(rng);
      any = any || editable[f];
    }
    if (any) return editable;
  }
}

std::vector<double> DirichletOverEditable(const std::vector<bool>& editable, Rng& rng) {
  std::exponential_distribution<double> unit_gamma(1.0);
  std::vector<double> p(editable.size(), 0.0);
  double total = 0.0;
  for (std::size_t f = 0; f < editable.size(); ++f) {
    if (!editable[f]) continue;
    p[f] = unit_gamma(rng);
    total += p[f];
  }
  if (total <= 0.0) {
    // All draws underflowed to zero: fall back to the Dirichlet mean.
    std::size_t count = static_cast<std::size_t>(std::count(editable.begin(), editable.end(), true));
    for (std::size_t f = 0; f < editable.size(); ++f) {
      p[f] = editable[f] ? 1.0 / static_cast<double>(count) : 0.0;
    }
    return p;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

std::vector<double> LinCostMean(const DatasetSchema& schema, const UserState& state,
                                double preference, std::size_t feature,
                                const std::vector<bool>& editable, Rng& rng) {
  return CostMean(CostKind::kLinear, schema, state, preference, feature, editable,
                  nullptr, rng);
}

std::vector<double> PercCostMean(const DatasetSchema& schema, const UserState& state,
                                 double preference, std::size_t feature,
                                 const std::vector<bool>& editable,
                                 const PercentileTable& table, Rng& rng) {
  return CostMean(CostKind::kPercentile, schema, state, preference, feature,
                  editable, &table, rng);
}

double SampleBeta(double mean, double stddev, Rng& rng) {
  const double variance = stddev * stddev;
  const double spread = mean * (1.0 - mean);
  if (spread <= variance) return std::clamp(mean, 0.0, 1.0);
  const double concentration = spread / variance - 1.0;
  std::gamma_distribution<double> ga(mean * concentration, 1.0);
  std::gamma_distribution<double> gb((1.0 - mean) * concentration, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  if (x + y <= 0.0) return std::clamp(mean, 0.0, 1.0);
  return std::clamp(x / (x + y), 0.0, 1.0);
}

void ValidateOverrides(const DatasetSchema& schema, const SamplerOverrides& overrides) {
  const std::size_t d = schema.num_features();
  if (overrides.alpha && !(*overrides.alpha >= 0.0 && *overrides.alpha <= 1.0)) {
    throw InvalidArgument("alpha must lie in [0, 1]");
  }
  if (overrides.editable) {
    const auto& editable = *overrides.editable;
    if (editable.size() != d) throw InvalidArgument("editable mask has wrong length");
    bool any = false;
    for (std::size_t f = 0; f < d; ++f) {
      if (!editable[f]) continue;
      any = true;
      if (schema.feature(f).immutable()) {
        throw InvalidArgument("feature '" + schema.feature(f).name() +
                              "' is immutable and cannot be editable");
      }
    }
    if (!any) throw InvalidArgument("editable feature set is empty");
  }
  if (overrides.preferences) {
    const auto& p = *overrides.preferences;
    if (p.size() != d) throw InvalidArgument("preference vector has wrong length");
    double total = 0.0;
    for (std::size_t f = 0; f < d; ++f) {
      if (!(p[f] >= 0.0) || !std::isfinite(p[f])) {
        throw InvalidArgument("preference scores must be finite and non-negative");
      }
      if (overrides.editable && !(*overrides.editable)[f] && p[f] != 0.0) {
        throw InvalidArgument("preference on non-editable feature '" +
                              schema.feature(f).name() + "'");
      }
      if (p[f] > 0.0 && schema.feature(f).immutable()) {
        throw InvalidArgument("preference on immutable feature '" +
                              schema.feature(f).name() + "'");
      }
      total += p[f];
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw InvalidArgument("preference scores must sum to 1");
    }
  }
}

CostFunction SampleCostFunction(const DatasetSchema& schema,
                                const PercentileTable& table,
                                const UserState& state, Rng& rng,
                                const SamplerOverrides& overrides) {
  ValidateOverrides(schema, overrides);
  schema.validate(state);
  const std::size_t d = schema.num_features();

  std::vector<bool> editable;
  if (overrides.editable) {
    editable = *overrides.editable;
  } else if (overrides.preferences) {
    editable.resize(d);
    for (std::size_t f = 0; f < d; ++f) editable[f] = (*overrides.preferences)[f] > 0.0;
  } else {
    editable = RandomEditableSubset(schema, rng);
  }

  std::vector<double> preferences = overrides.preferences
                                        ? *overrides.preferences
                                        : DirichletOverEditable(editable, rng);

  double alpha = 0.0;
  if (overrides.alpha) {
    alpha = *overrides.alpha;
  } else {
    alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  }

  std::vector<double> costs;
  costs.reserve(schema.total_domain_size());
  for (std::size_t f = 0; f < d; ++f) {
    const auto lin = LinCostMean(schema, state, preferences[f], f, editable, rng);
    const auto perc = PercCostMean(schema, state, preferences[f], f, editable, table, rng);
    const std::size_t s = *schema.feature(f).index_of(state[f]);
    const double stddev = alpha * kCostNoiseStd + (1.0 - alpha) * kCostNoiseStd;
    for (std::size_t x = 0; x < lin.size(); ++x) {
      if (x == s) {
        costs.push_back(0.0);
      } else if (std::isinf(lin[x]) || std::isinf(perc[x])) {
        costs.push_back(kInfinity);
      } else {
        const double mean = alpha * lin[x] + (1.0 - alpha) * perc[x];
        costs.push_back(SampleBeta(mean, stddev, rng));
      }
    }
  }
  return CostFunction(schema, std::move(costs), std::move(preferences),
                      std::move(editable), alpha);
}

CostSampleSet SampleCostBatch(const DatasetSchema& schema, const PercentileTable& table,
                              const UserState& state, std::size_t count,
                              Distribution distribution, std::uint64_t seed,
                              const SamplerOverrides& overrides, StreamTag tag) {
  if (count == 0) throw InvalidArgument("sample count must be at least 1");
  SamplerOverrides per_sample = overrides;
  if (distribution == Distribution::kLin) per_sample.alpha = 1.0;
  if (distribution == Distribution::kPerc) per_sample.alpha = 0.0;

  CostSampleSet set;
  set.state = state;
  set.seed = seed;
  set.distribution = distribution;
  set.samples.reserve(count);
  const std::uint64_t state_key = HashState(state);
  for (std::size_t j = 0; j < count; ++j) {
    Rng rng = MakeStream(seed, tag, {state_key, j});
    set.samples.push_back(SampleCostFunction(schema, table, state, rng, per_sample));
  }
  return set;
}

}  // namespace recourse
