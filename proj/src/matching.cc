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

#include "shallowsep/matching.h"

#include <bit>
#include <deque>

#include "shallowsep/blossom.h"

namespace shallowsep {

size_t DefectGraph::add_edge(int u, int v) {
    int n = static_cast<int>(adj_.size());
    if (u < 0 || u >= n || v >= n || (v < 0 && v != BOUNDARY) || u == v) {
        throw std::invalid_argument("bad edge endpoints");
    }
    size_t id = edges_.size();
    edges_.push_back({u, v});
    adj_[u].push_back({v, static_cast<int>(id)});
    if (v != BOUNDARY) {
        adj_[v].push_back({u, static_cast<int>(id)});
    } else {
        if (dangling_at_[u] == -1) {
            dangling_at_[u] = static_cast<int>(id);
        }
        num_dangling_++;
    }
    return id;
}

BitVec DefectGraph::boundary_of(const BitVec &edge_set) const {
    if (edge_set.size() != edges_.size()) {
        throw std::invalid_argument("edge set size mismatch");
    }
    BitVec r(adj_.size());
    for (size_t e : edge_set.ones()) {
        r.flip(edges_[e].u);
        if (edges_[e].v != BOUNDARY) {
            r.flip(edges_[e].v);
        }
    }
    return r;
}

DefectGraph::Bfs DefectGraph::bfs(int source) const {
    Bfs r;
    r.dist.assign(adj_.size(), -1);
    r.parent_edge.assign(adj_.size(), -1);
    std::deque<int> queue;
    r.dist[source] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (r.boundary_vertex == -1 && dangling_at_[v] != -1) {
            r.boundary_vertex = v;
            r.boundary_edge = dangling_at_[v];
            r.boundary_dist = r.dist[v] + 1;
        }
        for (auto [w, e] : adj_[v]) {
            if (w == BOUNDARY || r.dist[w] != -1) {
                continue;
            }
            r.dist[w] = r.dist[v] + 1;
            r.parent_edge[w] = e;
            queue.push_back(w);
        }
    }
    return r;
}

int DefectGraph::distance(int a, int b) const { return bfs(a).dist[b]; }

BitVec DefectGraph::min_weight_matching(const BitVec &defects) const {
    if (defects.size() != adj_.size()) {
        throw std::invalid_argument("defect set size mismatch");
    }
    BitVec out(edges_.size());
    std::vector<size_t> d = defects.ones();
    int k = static_cast<int>(d.size());
    if (k == 0) {
        return out;
    }
    std::vector<Bfs> searches;
    searches.reserve(k);
    for (int i = 0; i < k; i++) {
        searches.push_back(bfs(static_cast<int>(d[i])));
    }
    bool boundary = has_boundary();
    int nodes = boundary ? 2 * k : k;
    // Costs are scaled by k + 1 and each pairing pays one extra unit. At most k / 2 pairings exist, so the extra
    // units only decide between matchings of equal length, in favour of the one with more boundary matches.
    const int64_t scale = k + 1;
    std::vector<WeightedEdge> medges;
    for (int i = 0; i < k; i++) {
        for (int j = i + 1; j < k; j++) {
            int dist = searches[i].dist[d[j]];
            if (dist >= 0) {
                medges.push_back({i, j, dist * scale + (boundary ? 1 : 0)});
            }
        }
        if (boundary) {
            if (searches[i].boundary_dist >= 0) {
                medges.push_back({i, k + i, searches[i].boundary_dist * scale});
            }
            for (int j = i + 1; j < k; j++) {
                medges.push_back({k + i, k + j, 0});
            }
        }
    }
    std::vector<int> mate;
    try {
        mate = min_cost_perfect_matching(nodes, medges);
    } catch (const std::runtime_error &) {
        throw InfeasibleMatching("no edge set has the requested boundary");
    }
    auto walk_back = [&](const Bfs &s, int v) {
        while (s.parent_edge[v] != -1) {
            int e = s.parent_edge[v];
            out.flip(e);
            const Edge &ed = edges_[e];
            v = ed.u == v ? ed.v : ed.u;
        }
    };
    for (int i = 0; i < k; i++) {
        int j = mate[i];
        if (j < k) {
            if (j > i) {
                walk_back(searches[i], static_cast<int>(d[j]));
            }
        } else {
            walk_back(searches[i], searches[i].boundary_vertex);
            out.flip(searches[i].boundary_edge);
        }
    }
    return out;
}

namespace {

bool violates(const PauliOp &g, size_t q, char type) {
    // An X on q anticommutes with g iff g has Z at q; a Z iff g has X at q.
    return type == 'X' ? g.z.get(q) : g.x.get(q);
}

}  // namespace

PauliOp min_weight_pauli_for_syndrome(const std::vector<PauliOp> &generators, const BitVec &target, char type) {
    if (type != 'X' && type != 'Z') {
        throw std::invalid_argument("type must be X or Z");
    }
    if (generators.size() != target.size()) {
        throw std::invalid_argument("syndrome length differs from the number of generators");
    }
    if (generators.empty()) {
        throw std::invalid_argument("no generators");
    }
    size_t n = generators[0].num_qubits();
    std::vector<std::vector<int>> hits(n);
    bool graphlike = true;
    for (size_t q = 0; q < n; q++) {
        for (size_t g = 0; g < generators.size(); g++) {
            if (violates(generators[g], q, type)) {
                hits[q].push_back(static_cast<int>(g));
            }
        }
        if (hits[q].size() > 2) {
            graphlike = false;
        }
    }
    PauliOp out(n);
    BitVec &bits = type == 'X' ? out.x : out.z;
    if (graphlike) {
        DefectGraph g(generators.size());
        std::vector<size_t> qubit_of_edge;
        for (size_t q = 0; q < n; q++) {
            if (hits[q].size() == 1) {
                g.add_edge(hits[q][0], DefectGraph::BOUNDARY);
                qubit_of_edge.push_back(q);
            } else if (hits[q].size() == 2) {
                g.add_edge(hits[q][0], hits[q][1]);
                qubit_of_edge.push_back(q);
            }
        }
        BitVec f = g.min_weight_matching(target);
        for (size_t e : f.ones()) {
            bits.set(qubit_of_edge[e], true);
        }
        return out;
    }
    if (n > 24) {
        throw std::invalid_argument("generators are not graph-like and too many qubits for exhaustive search");
    }
    uint32_t best = 0;
    int best_weight = -1;
    std::vector<BitVec> cols(n, BitVec(generators.size()));
    for (size_t q = 0; q < n; q++) {
        for (int g : hits[q]) {
            cols[q].set(g, true);
        }
    }
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); mask++) {
        int w = std::popcount(mask);
        if (best_weight >= 0 && w >= best_weight) {
            continue;
        }
        BitVec s(generators.size());
        for (size_t q = 0; q < n; q++) {
            if ((mask >> q) & 1) {
                s ^= cols[q];
            }
        }
        if (s == target) {
            best = mask;
            best_weight = w;
        }
    }
    if (best_weight < 0) {
        throw InfeasibleMatching("no Pauli has the requested syndrome");
    }
    for (size_t q = 0; q < n; q++) {
        if ((best >> q) & 1) {
            bits.set(q, true);
        }
    }
    return out;
}

}  // namespace shallowsep
