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

#include <algorithm>
#include <cmath>
#include <string>

#include "recourse/error.hpp"

namespace recourse {
namespace {

// Positions in the flat cost table of the features where `to` differs
// from `from`. Unchanged features contribute an exact 0 and are skipped.
std::vector<std::size_t> ChangedPositions(const DatasetSchema& schema,
                                          const UserState& from,
                                          const UserState& to) {
  if (to.size() != schema.num_features() || from.size() != schema.num_features()) {
    throw InvalidArgument("state length does not match schema");
  }
  std::vector<std::size_t> positions;
  const auto& offsets = schema.domain_offsets();
  for (std::size_t f = 0; f < schema.num_features(); ++f) {
    if (to[f] == from[f]) continue;
    auto idx = schema.feature(f).index_of(to[f]);
    if (!idx) {
      throw InvalidArgument("value " + std::to_string(to[f]) +
                            " outside domain of '" + schema.feature(f).name() + "'");
    }
    positions.push_back(offsets[f] + *idx);
  }
  return positions;
}

double SumAt(std::span<const double> flat, std::span<const std::size_t> positions) {
  double total = 0.0;
  for (std::size_t p : positions) total += flat[p];
  return total;
}

}  // namespace

std::string_view ToString(Distribution distribution) {
  switch (distribution) {
    case Distribution::kLin: return "lin";
    case Distribution::kPerc: return "perc";
    case Distribution::kMix: return "mix";
  }
  return "mix";
}

Distribution ParseDistribution(std::string_view text) {
  if (text == "lin") return Distribution::kLin;
  if (text == "perc") return Distribution::kPerc;
  if (text == "mix") return Distribution::kMix;
  throw InvalidArgument("unknown distribution '" + std::string(text) +
                        "' (expected lin, perc or mix)");
}

CostFunction::CostFunction(const DatasetSchema& schema, std::vector<double> costs,
                           std::vector<double> preferences,
                           std::vector<bool> editable, double alpha)
    : offsets_(schema.domain_offsets()),
      costs_(std::move(costs)),
      preferences_(std::move(preferences)),
      editable_(std::move(editable)),
      alpha_(alpha) {
  if (costs_.size() != schema.total_domain_size()) {
    throw InvalidArgument("cost table size does not match schema domains");
  }
  if (preferences_.size() != schema.num_features() ||
      editable_.size() != schema.num_features()) {
    throw InvalidArgument("preference/editable vectors must have one entry per feature");
  }
}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("cost matrix data has wrong size");
  }
}

void CostMatrix::set_row(std::size_t i, std::span<const double> values) {
  if (values.size() != cols_) throw InvalidArgument("row length mismatch");
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
}

double EmcValue::value() const {
  if (samples == 0) throw InvalidArgument("EMC over an empty sample set");
  if (uncovered > 0) return kInfinity;
  return covered_sum / static_cast<double>(samples);
}

double EmcValue::covered_mean() const {
  if (samples == 0) throw InvalidArgument("EMC over an empty sample set");
  return covered_sum / static_cast<double>(samples);
}

double TransitionCost(const DatasetSchema& schema, const UserState& from,
                      const UserState& to, const CostFunction& cost) {
  const auto positions = ChangedPositions(schema, from, to);
  return SumAt(cost.flat(), positions);
}

double MinCost(const DatasetSchema& schema, const UserState& from,
               std::span<const UserState> set, const CostFunction& cost,
               const std::vector<bool>& valid) {
  if (set.empty()) throw InvalidArgument("MinCost over an empty recourse set");
  if (!valid.empty() && valid.size() != set.size()) {
    throw InvalidArgument("validity flags do not match recourse set size");
  }
  double best = kInfinity;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!valid.empty() && !valid[i]) continue;
    const double c = TransitionCost(schema, from, set[i], cost);
    if (c < best) best = c;
  }
  return best;
}

CostMatrix BuildCostMatrix(const DatasetSchema& schema, const UserState& from,
                           std::span<const UserState> set,
                           const CostSampleSet& samples,
                           const std::vector<bool>& valid) {
  if (!valid.empty() && valid.size() != set.size()) {
    throw InvalidArgument("validity flags do not match recourse set size");
  }
  const std::size_t m = samples.size();
  CostMatrix matrix(set.size(), m, kInfinity);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!valid.empty() && !valid[i]) continue;
    const auto positions = ChangedPositions(schema, from, set[i]);
    for (std::size_t j = 0; j < m; ++j) {
      matrix(i, j) = SumAt(samples.samples[j].flat(), positions);
    }
  }
  return matrix;
}

EmcValue EmcOf(const CostMatrix& matrix) {
  if (matrix.rows() == 0) throw InvalidArgument("EMC over an empty recourse set");
  if (matrix.cols() == 0) throw InvalidArgument("EMC over an empty sample set");
  EmcValue out;
  out.samples = matrix.cols();
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    double best = matrix(0, j);
    for (std::size_t i = 1; i < matrix.rows(); ++i) best = std::min(best, matrix(i, j));
    if (std::isinf(best)) {
      ++out.uncovered;
    } else {
      out.covered_sum += best;
    }
  }
  return out;
}

EmcValue EmcDetail(const DatasetSchema& schema, const UserState& from,
                   std::span<const UserState> set, const CostSampleSet& samples) {
  if (set.empty()) throw InvalidArgument("EMC over an empty recourse set");
  if (samples.size() == 0) throw InvalidArgument("EMC over an empty sample set");
  return EmcOf(BuildCostMatrix(schema, from, set, samples));
}

double Emc(const DatasetSchema& schema, const UserState& from,
           std::span<const UserState> set, const CostSampleSet& samples) {
  return EmcDetail(schema, from, set, samples).value();
}

}  // namespace recourse
