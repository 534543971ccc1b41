// Copyright 2026 The shallowsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHALLOWSEP_RNG_H
#define SHALLOWSEP_RNG_H

#include <cstdint>
#include <functional>
#include <random>

#include "shallowsep/bitvec.h"

namespace shallowsep {

/// Independent generator for trial `index` of a run seeded with `seed`.
std::mt19937_64 trial_rng(uint64_t seed, uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64 &rng) { return (rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(std::mt19937_64 &rng, double p) { return uniform01(rng) < p; }

BitVec random_bits(size_t n, std::mt19937_64 &rng);

/// Runs body(i) for i in [0, count) on `jobs` threads. Each index is processed exactly once.
void parallel_for(size_t count, int jobs, const std::function<void(size_t)> &body);

}  // namespace shallowsep

#endif
