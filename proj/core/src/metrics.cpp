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

#include <algorithm>
#include <cmath>
#include <set>

#include "recourse/error.hpp"

namespace recourse {

double FeatureDistance(const DatasetSchema& schema, std::size_t feature, int a, int b) {
  const FeatureSpec& spec = schema.feature(feature);
  if (!spec.ordered()) return a == b ? 0.0 : 1.0;
  if (spec.span() == 0) return 0.0;
  return std::abs(static_cast<double>(a) - b) / static_cast<double>(spec.span());
}

double StateDistance(const DatasetSchema& schema, const UserState& a, const UserState& b) {
  double total = 0.0;
  for (std::size_t f = 0; f < schema.num_features(); ++f) {
    total += FeatureDistance(schema, f, a[f], b[f]);
  }
  return total / static_cast<double>(schema.num_features());
}

double Proximity(const DatasetSchema& schema, const UserState& origin,
                 std::span<const UserState> members) {
  if (members.empty()) throw InvalidArgument("proximity of an empty set");
  double total = 0.0;
  for (const auto& m : members) total += StateDistance(schema, origin, m);
  return 1.0 - total / static_cast<double>(members.size());
}

double Sparsity(const UserState& origin, std::span<const UserState> members) {
  if (members.empty()) throw InvalidArgument("sparsity of an empty set");
  std::size_t changed = 0;
  for (const auto& m : members) {
    for (std::size_t f = 0; f < origin.size(); ++f) changed += (m[f] != origin[f]);
  }
  return 1.0 - static_cast<double>(changed) /
                   static_cast<double>(members.size() * origin.size());
}

double Diversity(const DatasetSchema& schema, std::span<const UserState> members) {
  if (members.size() < 2) return 0.0;
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      total += StateDistance(schema, members[i], members[j]);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

double Validity(std::span<const UserState> members, const std::vector<bool>& valid) {
  if (members.empty()) throw InvalidArgument("validity of an empty set");
  if (valid.size() != members.size()) {
    throw InvalidArgument("validity flags do not match recourse set size");
  }
  std::set<UserState> unique;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (valid[i]) unique.insert(members[i]);
  }
  return static_cast<double>(unique.size()) / static_cast<double>(members.size());
}

DistanceMetrics ComputeDistanceMetrics(const DatasetSchema& schema,
                                       const UserState& origin, const RecourseSet& set) {
  return {Diversity(schema, set.members), Proximity(schema, origin, set.members),
          Sparsity(origin, set.members), Validity(set.members, set.valid)};
}

SimulatedUser SimulateUser(const DatasetSchema& schema, const PercentileTable& table,
                           std::size_t id, const UserState& state,
                           std::uint64_t test_seed, Distribution distribution,
                           const SamplerOverrides& overrides) {
  SamplerOverrides o = overrides;
  if (distribution == Distribution::kLin) o.alpha = 1.0;
  if (distribution == Distribution::kPerc) o.alpha = 0.0;
  Rng rng = MakeStream(test_seed, StreamTag::kEvalSamples, {id, HashState(state)});
  SimulatedUser user;
  user.id = id;
  user.state = state;
  user.true_cost = SampleCostFunction(schema, table, state, rng, o);
  for (const auto& attr : schema.protected_attributes()) {
    user.subgroups[attr] = state[schema.require_feature(attr)];
  }
  return user;
}

double TrueMinCost(const DatasetSchema& schema, const SimulatedUser& user,
                   const RecourseSet& set) {
  return MinCost(schema, user.state, set.members, user.true_cost, set.valid);
}

double FsAtK(std::span<const double> min_costs, double k) {
  if (min_costs.empty()) throw InvalidArgument("FS@k over an empty population");
  std::size_t satisfied = 0;
  for (double c : min_costs) satisfied += (c < k);
  return static_cast<double>(satisfied) / static_cast<double>(min_costs.size());
}

double Coverage(std::span<const double> min_costs) {
  if (min_costs.empty()) throw InvalidArgument("coverage over an empty population");
  std::size_t covered = 0;
  for (double c : min_costs) covered += std::isfinite(c) ? 1 : 0;
  return static_cast<double>(covered) / static_cast<double>(min_costs.size());
}

PacResult Pac(std::span<const double> min_costs) {
  PacResult out;
  double total = 0.0;
  std::size_t finite = 0;
  for (double c : min_costs) {
    if (std::isfinite(c)) {
      total += c;
      ++finite;
    } else {
      ++out.uncovered;
    }
  }
  if (finite > 0) out.pac = total / static_cast<double>(finite);
  return out;
}

std::optional<double> DisparateImpactRatio(double metric_s1, double metric_s0) {
  if (metric_s0 == 0.0) return std::nullopt;
  return metric_s1 / metric_s0;
}

std::optional<double> DisparateImpactRatio(const FeatureSpec& attribute,
                                           const std::map<int, double>& metric_by_value) {
  if (metric_by_value.size() != 2) {
    throw InvalidArgument("DIR needs exactly two subgroups for '" + attribute.name() + "'");
  }
  const int s1 = attribute.value_at(0);
  auto first = metric_by_value.find(s1);
  if (first == metric_by_value.end()) {
    throw InvalidArgument("DIR: subgroup " + std::to_string(s1) + " of '" +
                          attribute.name() + "' is empty");
  }
  auto other = metric_by_value.begin();
  if (other->first == s1) ++other;
  return DisparateImpactRatio(first->second, other->second);
}

std::vector<double> ConcentrationDistance(const std::vector<std::vector<bool>>& test,
                                          const std::vector<std::vector<bool>>& train) {
  if (train.empty()) throw InvalidArgument("concentration distance: empty train set");
  std::vector<double> out;
  out.reserve(test.size());
  for (const auto& t : test) {
    std::size_t best = t.size() + 1;
    for (const auto& r : train) {
      if (r.size() != t.size()) {
        throw InvalidArgument("concentration vectors differ in length");
      }
      std::size_t diff = 0;
      for (std::size_t i = 0; i < t.size(); ++i) diff += (t[i] != r[i]);
      best = std::min(best, diff);
    }
    out.push_back(std::sqrt(static_cast<double>(best)));
  }
  return out;
}

MetricsReport EvaluatePopulation(const DatasetSchema& schema,
                                 std::span<const SimulatedUser> users,
                                 std::span<const RecourseSet> sets, double k) {
  if (users.empty()) throw InvalidArgument("evaluation over an empty population");
  if (users.size() != sets.size()) {
    throw InvalidArgument("one recourse set per user is required");
  }
  MetricsReport report;
  report.users = users.size();
  report.k = k;
  std::vector<double> costs(users.size());
  for (std::size_t u = 0; u < users.size(); ++u) {
    costs[u] = TrueMinCost(schema, users[u], sets[u]);
    const auto d = ComputeDistanceMetrics(schema, users[u].state, sets[u]);
    report.distance.diversity += d.diversity;
    report.distance.proximity += d.proximity;
    report.distance.sparsity += d.sparsity;
    report.distance.validity += d.validity;
  }
  const double n = static_cast<double>(users.size());
  report.distance.diversity /= n;
  report.distance.proximity /= n;
  report.distance.sparsity /= n;
  report.distance.validity /= n;
  report.fs_at_k = FsAtK(costs, k);
  report.coverage = Coverage(costs);
  report.pac = Pac(costs);

  for (const auto& attr : schema.protected_attributes()) {
    const std::size_t f = schema.require_feature(attr);
    std::map<int, std::vector<double>> by_value;
    for (std::size_t u = 0; u < users.size(); ++u) {
      by_value[users[u].state[f]].push_back(costs[u]);
    }
    std::map<int, double> fs, cov;
    for (const auto& [value, group] : by_value) {
      SubgroupMetrics m{group.size(), FsAtK(group, k), Coverage(group), Pac(group)};
      report.subgroups[attr][value] = m;
      fs[value] = m.fs_at_k;
      cov[value] = m.coverage;
    }
    if (by_value.size() == 2 && by_value.contains(schema.feature(f).value_at(0))) {
      report.dir[attr] = {DisparateImpactRatio(schema.feature(f), fs),
                          DisparateImpactRatio(schema.feature(f), cov)};
    } else {
      report.dir[attr] = {};
    }
  }
  return report;
}

}  // namespace recourse
