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

#ifndef RECOURSE_APP_EXPERIMENT_HPP_
#define RECOURSE_APP_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recourse/sampling.hpp"
#include "recourse/search.hpp"
#include "recourse_app/pipeline.hpp"
#include "recourse_app/report.hpp"

namespace recourse::app {

enum class ExperimentKind {
  kMain,
  kAblation,
  kFairness,
  kAlphaGrid,
  kConcentrationShift,
  kBudgetSweep,
  kSetSizeSweep,
  kSamplesSweep,
};

std::string_view ToString(ExperimentKind kind);
ExperimentKind ParseExperimentKind(std::string_view text);

struct MethodSpec {
  Method method = Method::kCols;
  Objective objective = Objective::kEmc;
};

// "cols", "pcols", "random", "ls" (EMC) or "ls-<objective>".
MethodSpec ParseMethodSpec(std::string_view text);
std::vector<MethodSpec> DefaultMethods(ExperimentKind kind);
// Swept values; empty for kinds without a grid.
std::vector<double> DefaultGrid(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kMain;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  std::vector<MethodSpec> methods;  // empty: DefaultMethods(kind)
  SearchConfig search;              // seed is taken from `seeds`
  Distribution distribution = Distribution::kMix;
  SamplerOverrides overrides;       // generation-time sampler constraints
  EvalParams eval;
  std::vector<double> grid;         // empty: DefaultGrid(kind)
  std::size_t bins = 10;
  std::size_t concentration_vectors = 500;
  std::optional<std::filesystem::path> samples_dir;

  // Throws InvalidArgument for empty seeds, a test seed equal to a
  // generation seed, or grid values outside the kind's range.
  void validate() const;
};

struct ExperimentRow {
  std::vector<std::pair<std::string, double>> setting;  // swept parameters
  MetricRow metric;

  std::optional<double> param(std::string_view name) const;
};

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::kMain;
  std::vector<ExperimentRow> rows;
};

ExperimentReport RunExperiment(const Workspace& ws, const ExperimentConfig& config);

// setting,method,metric,group,value
std::string ExperimentCsv(const ExperimentReport& report);

}  // namespace recourse::app

#endif  // RECOURSE_APP_EXPERIMENT_HPP_
