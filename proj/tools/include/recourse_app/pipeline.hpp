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

#ifndef RECOURSE_APP_PIPELINE_HPP_
#define RECOURSE_APP_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "recourse/cost.hpp"
#include "recourse/metrics.hpp"
#include "recourse/model.hpp"
#include "recourse/sampling.hpp"
#include "recourse/schema.hpp"
#include "recourse/search.hpp"
#include "recourse_app/results.hpp"

namespace recourse::app {

// Everything a generation or evaluation run reads from disk.
struct Workspace {
  DatasetSchema schema;
  Classifier classifier;
  PercentileTable table;
  std::vector<std::size_t> ids;  // row indices of the processed users
  std::vector<UserState> users;
};

// Rows the classifier assigns to the undesired class. Unmetered.
std::vector<std::size_t> UndesiredRows(const Classifier& classifier,
                                       const std::vector<UserState>& rows);

// Users come from `data`, the percentile table from `train_data` (or
// `data` when absent). Keeps the first `max_users` undesired rows.
Workspace LoadWorkspace(const std::filesystem::path& schema_path,
                        const std::filesystem::path& data_path,
                        const std::filesystem::path& model_path,
                        const std::optional<std::filesystem::path>& train_data_path,
                        std::optional<std::size_t> max_users = std::nullopt);

Workspace MakeWorkspace(DatasetSchema schema, Classifier classifier,
                        const std::vector<UserState>& train_rows,
                        const std::vector<UserState>& candidate_rows,
                        std::optional<std::size_t> max_users = std::nullopt);

struct GenerateParams {
  Method method = Method::kCols;
  Objective objective = Objective::kEmc;
  SearchConfig search;
  Distribution distribution = Distribution::kMix;
  SamplerOverrides overrides;
  std::optional<std::filesystem::path> samples_dir;  // read-through cache
};

// Training cost samples for every user, ordered like ws.users.
std::vector<CostSampleSet> TrainSamples(const Workspace& ws, const GenerateParams& params);

std::vector<ResultDoc> Generate(const Workspace& ws, const GenerateParams& params);
std::vector<ResultDoc> Generate(const Workspace& ws, const GenerateParams& params,
                                const std::vector<CostSampleSet>& samples);

struct EvalParams {
  std::uint64_t test_seed = 1000;
  double k = 1.0;
  Distribution distribution = Distribution::kMix;
  SamplerOverrides overrides;
};

std::vector<SimulatedUser> SimulateUsers(const DatasetSchema& schema,
                                         const PercentileTable& table,
                                         const std::vector<ResultDoc>& docs,
                                         const EvalParams& params);

MetricsReport Evaluate(const DatasetSchema& schema, const PercentileTable& table,
                       const std::vector<ResultDoc>& docs, const EvalParams& params);

// "education,capital_loss" -> mask over schema features.
std::vector<bool> ParseEditableList(const DatasetSchema& schema, const std::string& text);
// Either one number per feature ("0,0.5,0.5,...") or "name=weight" pairs
// with unnamed features at 0.
std::vector<double> ParsePreferenceList(const DatasetSchema& schema, const std::string& text);

}  // namespace recourse::app

#endif  // RECOURSE_APP_PIPELINE_HPP_
