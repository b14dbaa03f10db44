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

#ifndef RECOURSE_METRICS_HPP_
#define RECOURSE_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recourse/cost.hpp"
#include "recourse/recourse_set.hpp"
#include "recourse/rng.hpp"
#include "recourse/sampling.hpp"
#include "recourse/schema.hpp"

namespace recourse {

// |x - y| / (max - min) for ordered features, 0/1 mismatch for unordered.
double FeatureDistance(const DatasetSchema& schema, std::size_t feature, int a, int b);
// Mean of FeatureDistance over all features; lies in [0, 1].
double StateDistance(const DatasetSchema& schema, const UserState& a, const UserState& b);

struct DistanceMetrics {
  double diversity = 0.0;
  double proximity = 0.0;
  double sparsity = 0.0;
  double validity = 0.0;
};

double Proximity(const DatasetSchema& schema, const UserState& origin,
                 std::span<const UserState> members);
double Sparsity(const UserState& origin, std::span<const UserState> members);
// Mean pairwise distance; 0 for a single member.
double Diversity(const DatasetSchema& schema, std::span<const UserState> members);
// Unique valid members over |S|.
double Validity(std::span<const UserState> members, const std::vector<bool>& valid);

DistanceMetrics ComputeDistanceMetrics(const DatasetSchema& schema,
                                       const UserState& origin,
                                       const RecourseSet& set);

// A user with a hidden ground-truth cost function.
struct SimulatedUser {
  std::size_t id = 0;
  UserState state;
  CostFunction true_cost;
  std::map<std::string, int> subgroups;
};

// Draws the hidden cost function from an evaluation-only stream keyed by
// (test_seed, id, state), disjoint from every generation-time stream.
SimulatedUser SimulateUser(const DatasetSchema& schema, const PercentileTable& table,
                           std::size_t id, const UserState& state,
                           std::uint64_t test_seed,
                           Distribution distribution = Distribution::kMix,
                           const SamplerOverrides& overrides = {});

// MinCost under the hidden cost function, counting valid members only.
double TrueMinCost(const DatasetSchema& schema, const SimulatedUser& user,
                   const RecourseSet& set);

// Fraction of costs strictly below k.
double FsAtK(std::span<const double> min_costs, double k);
double Coverage(std::span<const double> min_costs);

struct PacResult {
  std::optional<double> pac;  // mean over users with finite cost
  std::size_t uncovered = 0;
};
PacResult Pac(std::span<const double> min_costs);

// metric(S=1) / metric(S=0); nullopt when the denominator is zero.
std::optional<double> DisparateImpactRatio(double metric_s1, double metric_s0);
// Subgroup S=1 is the first value of the attribute's domain. Requires
// exactly two subgroup entries.
std::optional<double> DisparateImpactRatio(const FeatureSpec& attribute,
                                           const std::map<int, double>& metric_by_value);

// For every test vector, the Euclidean distance to its nearest train
// vector.
std::vector<double> ConcentrationDistance(const std::vector<std::vector<bool>>& test,
                                          const std::vector<std::vector<bool>>& train);

struct SubgroupMetrics {
  std::size_t users = 0;
  double fs_at_k = 0.0;
  double coverage = 0.0;
  PacResult pac;
};

struct DirMetrics {
  std::optional<double> fs_at_k;
  std::optional<double> coverage;
};

struct MetricsReport {
  std::size_t users = 0;
  double k = 1.0;
  double fs_at_k = 0.0;
  PacResult pac;
  double coverage = 0.0;
  DistanceMetrics distance;  // averaged over users
  // attribute -> value -> metrics
  std::map<std::string, std::map<int, SubgroupMetrics>> subgroups;
  std::map<std::string, DirMetrics> dir;
};

MetricsReport EvaluatePopulation(const DatasetSchema& schema,
                                 std::span<const SimulatedUser> users,
                                 std::span<const RecourseSet> sets, double k = 1.0);

}  // namespace recourse

#endif  // RECOURSE_METRICS_HPP_
