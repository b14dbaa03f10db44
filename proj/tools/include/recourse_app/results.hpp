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

#ifndef RECOURSE_APP_RESULTS_HPP_
#define RECOURSE_APP_RESULTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "recourse/cost.hpp"
#include "recourse/recourse_set.hpp"
#include "recourse/schema.hpp"
#include "recourse/search.hpp"

namespace recourse::app {

// Outcome of one optimizer run for one user.
struct ResultDoc {
  std::size_t user = 0;  // row index in the users file
  UserState state;
  Method method = Method::kCols;
  Objective objective = Objective::kEmc;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t set_size = 0;
  std::size_t num_samples = 0;
  Distribution distribution = Distribution::kMix;
  RecourseSet set;
  EmcValue emc;
  std::vector<EmcValue> trace;
  std::vector<double> objective_trace;
  std::vector<EmcValue> restart_emc;
  std::size_t queries = 0;
  std::size_t iterations = 0;
};

// "cols", "pcols", "random", or "ls-<objective>".
std::string MethodLabel(Method method, Objective objective);
std::string MethodLabel(const ResultDoc& doc);

std::string SerializeResult(const ResultDoc& doc);
ResultDoc ParseResult(std::string_view line);

// One JSON document per line.
void WriteResults(const std::filesystem::path& path, const std::vector<ResultDoc>& docs);
std::vector<ResultDoc> ReadResults(const std::filesystem::path& path);

// Every *.jsonl file under `dir`, in file-name order. Throws if there is
// none.
std::vector<ResultDoc> ReadResultDir(const std::filesystem::path& dir);

std::string ResultFileName(Method method, Objective objective, std::uint64_t seed);

}  // namespace recourse::app

#endif  // RECOURSE_APP_RESULTS_HPP_
