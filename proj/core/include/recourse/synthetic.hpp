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

#ifndef RECOURSE_SYNTHETIC_HPP_
#define RECOURSE_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>

#include "recourse/schema.hpp"

namespace recourse {

// Twelve-feature census-style schema: binned age, education and weekly
// hours, coded categorical fields, and three immutable attributes. Gender
// and race are protected; label column "income", desired class 1.
DatasetSchema AdultLikeSchema();

// Labelled rows drawn from a fixed generative model over
// AdultLikeSchema(). About a quarter of the rows are in the desired class.
Dataset GenerateAdultLike(const DatasetSchema& schema, std::size_t rows,
                          std::uint64_t seed);

// Six features covering every kind / mutability combination:
// f0 ordered increase-only, f1 ordered, f2 unordered, f3 unordered
// immutable, f4 ordered decrease-only, f5 ordered. Label column "y".
DatasetSchema ToySchema();
Dataset GenerateToy(const DatasetSchema& schema, std::size_t rows, std::uint64_t seed);

// Two mutable ordered features with values 0..side-1.
DatasetSchema GridSchema(int side);

}  // namespace recourse

#endif  // RECOURSE_SYNTHETIC_HPP_
