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

#ifndef RECOURSE_APP_POOL_HPP_
#define RECOURSE_APP_POOL_HPP_

#include <cstddef>
#include <functional>

namespace recourse::app {

// Worker count from RECOURSE_WORKERS, else the hardware concurrency.
std::size_t WorkerCount();

// Calls fn(i) for i in [0, n) on up to `workers` threads. Each index runs
// exactly once; the first exception is rethrown after all workers stop.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn,
                 std::size_t workers = WorkerCount());

}  // namespace recourse::app

#endif  // RECOURSE_APP_POOL_HPP_
