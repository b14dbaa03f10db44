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

#ifndef RECOURSE_RNG_HPP_
#define RECOURSE_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace recourse {

using Rng = std::mt19937_64;

// Namespaces keep generation-time and evaluation-time randomness disjoint
// even when the numeric seeds coincide.
enum class StreamTag : std::uint64_t {
  kTrainSamples = 0x7472'6169'6e00'0001ULL,
  kEvalSamples = 0x6576'616c'0000'0002ULL,
  kSearch = 0x7365'6172'6368'0003ULL,
  kModel = 0x6d6f'6465'6c00'0004ULL,
  kData = 0x6461'7461'0000'0005ULL,
  kExperiment = 0x6578'7065'7200'0006ULL,
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent generator from a seed, a namespace and a path of
// indices (user, sample, restart, ...).
inline Rng MakeStream(std::uint64_t seed, StreamTag tag,
                      std::initializer_list<std::uint64_t> path = {}) {
  std::uint64_t h = SplitMix64(seed ^ static_cast<std::uint64_t>(tag));
  for (std::uint64_t p : path) h = SplitMix64(h ^ SplitMix64(p));
  return Rng(h);
}

}  // namespace recourse

#endif  // RECOURSE_RNG_HPP_
