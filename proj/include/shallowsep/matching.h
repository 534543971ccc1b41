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

#ifndef SHALLOWSEP_MATCHING_H
#define SHALLOWSEP_MATCHING_H

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "shallowsep/bitvec.h"
#include "shallowsep/pauli.h"

namespace shallowsep {

class InfeasibleMatching : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Unit-weight graph whose edges may be dangling (attached to one vertex, the other end lies on the boundary).
///
/// The boundary of an edge set F is the set of vertices incident to an odd number of edges of F, counting each
/// dangling edge once at its single endpoint.
class DefectGraph {
   public:
    static constexpr int BOUNDARY = -1;

    struct Edge {
        int u;
        int v;  // BOUNDARY for a dangling edge.
    };

    explicit DefectGraph(size_t num_vertices = 0) : adj_(num_vertices), dangling_at_(num_vertices, -1) {}

    size_t num_vertices() const { return adj_.size(); }
    size_t num_edges() const { return edges_.size(); }
    const Edge &edge(size_t e) const { return edges_[e]; }
    const std::vector<Edge> &edges() const { return edges_; }
    /// Adds an edge and returns its id. Pass BOUNDARY as v for a dangling edge.
    size_t add_edge(int u, int v);
    bool has_boundary() const { return num_dangling_ > 0; }

    /// Incidence of an edge set, as a bit string over the vertices.
    BitVec boundary_of(const BitVec &edge_set) const;

    /// Minimum-cardinality edge set F with boundary_of(F) equal to the defect set. Throws InfeasibleMatching when no
    /// such set exists. Among minimum sets, one with the most defects matched to the boundary is chosen. Ties between
    /// equally short paths are broken by BFS in edge-id order, so the output is a deterministic function of the graph
    /// and the defects.
    BitVec min_weight_matching(const BitVec &defects) const;

    /// Graph distance between two vertices, -1 if disconnected.
    int distance(int a, int b) const;

   private:
    struct Bfs {
        std::vector<int> dist;
        std::vector<int> parent_edge;
        int boundary_vertex = -1;
        int boundary_edge = -1;
        int boundary_dist = -1;
    };
    Bfs bfs(int source) const;

    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;  // (neighbor, edge id), sorted by edge id.
    std::vector<int> dangling_at_;                        // Smallest dangling edge id at each vertex, or -1.
    size_t num_dangling_ = 0;
};

/// Minimum-weight Pauli of the given type ('X' or 'Z') whose anticommutation pattern with the generators equals
/// the target syndrome. Uses matching when each single-qubit flip violates at most two generators, otherwise an
/// exhaustive search (at most 24 qubits). Throws InfeasibleMatching if no such Pauli exists.
PauliOp min_weight_pauli_for_syndrome(const std::vector<PauliOp> &generators, const BitVec &target, char type);

}  // namespace shallowsep

#endif
