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

#ifndef RECOURSE_SAMPLE_IO_HPP_
#define RECOURSE_SAMPLE_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "recourse/cost.hpp"
#include "recourse/schema.hpp"

namespace recourse {

// JSON document: distribution tag, seed, state, and per sample its alpha,
// preference vector, editable mask and per-feature cost vectors. Infinite
// costs are the string "inf".
std::string SerializeSampleSet(const CostSampleSet& samples,
                               const DatasetSchema& schema);
CostSampleSet ParseSampleSet(std::string_view text, const DatasetSchema& schema);

void WriteSampleSet(const std::filesystem::path& path,
                    const CostSampleSet& samples, const DatasetSchema& schema);
CostSampleSet ReadSampleSet(const std::filesystem::path& path,
                            const DatasetSchema& schema);

}  // namespace recourse

#endif  // RECOURSE_SAMPLE_IO_HPP_
