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

#ifndef RECOURSE_COST_HPP_
#define RECOURSE_COST_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "recourse/schema.hpp"

namespace recourse {

// Infeasible transitions. IEEE infinity orders above every real and
// saturates under addition, which is exactly the arithmetic we need.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Distribution { kLin, kPerc, kMix };

std::string_view ToString(Distribution distribution);
Distribution ParseDistribution(std::string_view text);

// Per-feature transition costs out of one fixed user state. Entry
// (f, i) is the cost of moving feature f from the user's value to the i-th
// value of its domain: 0 on the diagonal, [0, 1] when feasible, kInfinity
// otherwise.
class CostFunction {
 public:
  CostFunction() = default;
  CostFunction(const DatasetSchema& schema, std::vector<double> costs,
               std::vector<double> preferences, std::vector<bool> editable,
               double alpha);

  double cost(std::size_t feature, std::size_t domain_index) const {
    return costs_[offsets_[feature] + domain_index];
  }
  std::span<const double> feature_costs(std::size_t feature) const {
    return std::span<const double>(costs_).subspan(
        offsets_[feature], offsets_[feature + 1] - offsets_[feature]);
  }
  // Flat layout matching DatasetSchema::domain_offsets().
  std::span<const double> flat() const { return costs_; }

  const std::vector<double>& preferences() const { return preferences_; }
  const std::vector<bool>& editable() const { return editable_; }
  double alpha() const { return alpha_; }
  std::size_t num_features() const { return preferences_.size(); }

  friend bool operator==(const CostFunction&, const CostFunction&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> costs_;
  std::vector<double> preferences_;
  std::vector<bool> editable_;
  double alpha_ = 0.0;
};

// M cost functions sampled for one user state.
struct CostSampleSet {
  UserState state;
  std::vector<CostFunction> samples;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::kMix;

  std::size_t size() const { return samples.size(); }
  friend bool operator==(const CostSampleSet&, const CostSampleSet&) = default;
};

// N x M table of incurred costs: row i is a counterfactual, column j a
// cost sample.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  void set_row(std::size_t i, std::span<const double> values);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// EMC split into its infinite and finite parts. A recourse set's EMC is
// infinite as soon as one sample has no finite option; ordering first by
// the number of such samples and then by the finite sum refines the
// extended-real order and is what the optimizers minimize.
struct EmcValue {
  std::size_t uncovered = 0;
  double covered_sum = 0.0;
  std::size_t samples = 0;

  // (1/M) * sum of per-sample minima; kInfinity when any sample is
  // uncovered.
  double value() const;
  // Finite per-sample minima averaged over all M samples, uncovered samples
  // contributing 0. Equals value() when uncovered == 0.
  double covered_mean() const;

  friend bool operator==(const EmcValue& a, const EmcValue& b) {
    return a.uncovered == b.uncovered && a.covered_sum == b.covered_sum;
  }
  friend std::partial_ordering operator<=>(const EmcValue& a, const EmcValue& b) {
    if (auto c = a.uncovered <=> b.uncovered; c != 0) return c;
    return a.covered_sum <=> b.covered_sum;
  }
};

double TransitionCost(const DatasetSchema& schema, const UserState& from,
                      const UserState& to, const CostFunction& cost);

// Minimum transition cost over `set`. Members flagged invalid (when
// `valid` is non-empty) cost kInfinity.
double MinCost(const DatasetSchema& schema, const UserState& from,
               std::span<const UserState> set, const CostFunction& cost,
               const std::vector<bool>& valid = {});

double Emc(const DatasetSchema& schema, const UserState& from,
           std::span<const UserState> set, const CostSampleSet& samples);
EmcValue EmcDetail(const DatasetSchema& schema, const UserState& from,
                   std::span<const UserState> set, const CostSampleSet& samples);

// Entry (i, j) = TransitionCost(from, set[i], samples[j]); rows whose
// `valid` flag is false are all kInfinity.
CostMatrix BuildCostMatrix(const DatasetSchema& schema, const UserState& from,
                           std::span<const UserState> set,
                           const CostSampleSet& samples,
                           const std::vector<bool>& valid = {});

// Mean of column minima, split as in EmcValue.
EmcValue EmcOf(const CostMatrix& matrix);

}  // namespace recourse

#endif  // RECOURSE_COST_HPP_
