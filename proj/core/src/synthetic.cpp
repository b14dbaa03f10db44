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

#include "recourse/synthetic.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "recourse/error.hpp"
#include "recourse/rng.hpp"

namespace recourse {
namespace {

std::vector<int> Range(int n) {
  std::vector<int> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

FeatureSpec Ordered(std::string name, int n, Mutability m = Mutability::kMutable) {
  return FeatureSpec(std::move(name), FeatureKind::kOrdered, Range(n), m);
}

FeatureSpec Unordered(std::string name, int n, Mutability m = Mutability::kMutable) {
  return FeatureSpec(std::move(name), FeatureKind::kUnordered, Range(n), m);
}

int Pick(Rng& rng, std::initializer_list<double> weights) {
  std::discrete_distribution<int> d(weights);
  return d(rng);
}

int Logistic(Rng& rng, double logit) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < 1.0 / (1.0 + std::exp(-logit)) ? 1 : 0;
}

void RequireFeatures(const DatasetSchema& schema, std::size_t n, const char* what) {
  if (schema.num_features() != n) {
    throw InvalidArgument(std::string(what) + ": schema has the wrong number of features");
  }
}

}  // namespace

DatasetSchema AdultLikeSchema() {
  std::vector<FeatureSpec> f;
  f.push_back(Ordered("age", 10, Mutability::kIncreaseOnly));
  f.push_back(Unordered("workclass", 2));
  f.push_back(Ordered("education", 8, Mutability::kIncreaseOnly));
  f.push_back(Unordered("marital_status", 2));
  f.push_back(Unordered("occupation", 2));
  f.push_back(Unordered("relationship", 2));
  f.push_back(Unordered("race", 2, Mutability::kImmutable));
  f.push_back(Unordered("gender", 2, Mutability::kImmutable));
  f.push_back(Ordered("capital_gain", 5));
  f.push_back(Ordered("capital_loss", 5));
  f.push_back(Ordered("hours_per_week", 10));
  f.push_back(Unordered("native_country", 2, Mutability::kImmutable));
  return DatasetSchema(std::move(f), 1, {"gender", "race"}, "income");
}

Dataset GenerateAdultLike(const DatasetSchema& schema, std::size_t rows,
                          std::uint64_t seed) {
  RequireFeatures(schema, 12, "adult-like generator");
  Rng rng = MakeStream(seed, StreamTag::kData, {0xad017});
  Dataset out;
  out.labels.emplace();
  out.rows.reserve(rows);
  out.labels->reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    UserState s;
    s.values.resize(12);
    s[0] = Pick(rng, {6, 10, 12, 12, 11, 10, 8, 6, 4, 3});
    s[1] = Pick(rng, {30, 70});
    std::binomial_distribution<int> edu(7, 0.25 + 0.03 * s[0]);
    s[2] = edu(rng);
    s[3] = s[0] < 2 ? Pick(rng, {1, 4}) : Pick(rng, {5, 4});
    s[4] = s[2] >= 5 ? Pick(rng, {6, 4}) : Pick(rng, {3, 7});
    s[5] = s[3] == 0 ? Pick(rng, {8, 2}) : Pick(rng, {1, 9});
    s[6] = Pick(rng, {85, 15});
    s[7] = Pick(rng, {67, 33});
    s[8] = Pick(rng, {84, 7, 4, 3, 2});
    s[9] = Pick(rng, {92, 3, 2, 2, 1});
    std::binomial_distribution<int> hours(9, 0.4 + (s[7] == 0 ? 0.08 : 0.0));
    s[10] = hours(rng);
    s[11] = Pick(rng, {90, 10});

    const double logit = -7.6 + 0.28 * s[0] + 0.55 * s[2] + (s[3] == 0 ? 1.1 : 0.0) +
                         (s[4] == 0 ? 0.9 : 0.0) + (s[1] == 0 ? 0.3 : 0.0) +
                         (s[5] == 0 ? 0.5 : 0.0) + (s[6] == 0 ? 0.3 : 0.0) +
                         (s[7] == 0 ? 0.6 : 0.0) + 0.9 * s[8] - 0.2 * s[9] +
                         0.3 * s[10] + (s[11] == 0 ? 0.2 : 0.0);
    out.labels->push_back(Logistic(rng, logit));
    out.rows.push_back(std::move(s));
  }
  return out;
}

DatasetSchema ToySchema() {
  std::vector<FeatureSpec> f;
  f.push_back(Ordered("f0", 5, Mutability::kIncreaseOnly));
  f.push_back(Ordered("f1", 7));
  f.push_back(Unordered("f2", 4));
  f.push_back(Unordered("f3", 2, Mutability::kImmutable));
  f.push_back(Ordered("f4", 5, Mutability::kDecreaseOnly));
  f.push_back(Ordered("f5", 10));
  return DatasetSchema(std::move(f), 1, {"f3"}, "y");
}

Dataset GenerateToy(const DatasetSchema& schema, std::size_t rows, std::uint64_t seed) {
  RequireFeatures(schema, 6, "toy generator");
  Rng rng = MakeStream(seed, StreamTag::kData, {0x70e});
  Dataset out;
  out.labels.emplace();
  const double f2_effect[4] = {-0.5, 0.0, 0.4, 0.8};
  for (std::size_t i = 0; i < rows; ++i) {
    UserState s;
    s.values.resize(6);
    for (std::size_t f = 0; f < 6; ++f) {
      std::uniform_int_distribution<int> v(0, static_cast<int>(schema.feature(f).size()) - 1);
      s[f] = v(rng);
    }
    const double logit = -4.5 + 0.6 * s[0] + 0.4 * s[1] + f2_effect[s[2]] +
                         0.3 * s[3] - 0.5 * s[4] + 0.35 * s[5];
    out.labels->push_back(Logistic(rng, 2.0 * logit));
    out.rows.push_back(std::move(s));
  }
  return out;
}

DatasetSchema GridSchema(int side) {
  if (side < 2) throw InvalidArgument("grid schema needs at least two values per axis");
  std::vector<FeatureSpec> f;
  f.push_back(Ordered("x", side));
  f.push_back(Ordered("y", side));
  return DatasetSchema(std::move(f), 1, {});
}

}  // namespace recourse
