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

#ifndef SHALLOWSEP_BLOSSOM_H
#define SHALLOWSEP_BLOSSOM_H

#include <cstdint>
#include <vector>

namespace shallowsep {

struct WeightedEdge {
    int u;
    int v;
    int64_t weight;
};

/// Edmonds' weighted blossom algorithm, O(n^3). Returns mate[v] (or -1).
///
/// With max_cardinality set, the result has maximum cardinality and maximum weight among those.
std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges, bool max_cardinality);

/// Minimum-cost perfect matching. Throws std::runtime_error if no perfect matching exists.
std::vector<int> min_cost_perfect_matching(int num_vertices, const std::vector<WeightedEdge> &edges);

}  // namespace shallowsep

#endif
