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

#ifndef RECOURSE_RECOURSE_SET_HPP_
#define RECOURSE_RECOURSE_SET_HPP_

#include <cstddef>
#include <vector>

#include "recourse/schema.hpp"

namespace recourse {

// The counterfactuals offered to one user, with the classifier's verdict on
// each at generation time (true = desired class).
struct RecourseSet {
  std::vector<UserState> members;
  std::vector<bool> valid;

  std::size_t size() const { return members.size(); }
  friend bool operator==(const RecourseSet&, const RecourseSet&) = default;
};

}  // namespace recourse

#endif  // RECOURSE_RECOURSE_SET_HPP_
