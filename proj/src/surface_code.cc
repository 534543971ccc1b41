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

#include "shallowsep/surface_code.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "shallowsep/rng.h"

namespace shallowsep {

int SurfaceCodeLayout::qubit_at(int a, int b) const {
    int w = 2 * d - 1;
    if (a < 0 || b < 0 || a >= w || b >= w) {
        return -1;
    }
    return grid[b * w + a];
}

PauliOp SurfaceCodeLayout::vertex_stabilizer(size_t v) const {
    PauliOp p(m);
    for (size_t q : vertex_stabilizers[v]) {
        p.x.set(q, true);
    }
    return p;
}

PauliOp SurfaceCodeLayout::face_stabilizer(size_t f) const {
    PauliOp p(m);
    for (size_t q : face_stabilizers[f]) {
        p.z.set(q, true);
    }
    return p;
}

std::vector<PauliOp> SurfaceCodeLayout::stabilizers() const {
    std::vector<PauliOp> out;
    for (size_t v = 0; v < vertex_stabilizers.size(); v++) {
        out.push_back(vertex_stabilizer(v));
    }
    for (size_t f = 0; f < face_stabilizers.size(); f++) {
        out.push_back(face_stabilizer(f));
    }
    return out;
}

PauliOp SurfaceCodeLayout::logical_x() const {
    PauliOp p(m);
    for (size_t q : diag) {
        p.x.set(q, true);
    }
    return p;
}

PauliOp SurfaceCodeLayout::logical_z() const {
    PauliOp p(m);
    for (size_t q : diag) {
        p.z.set(q, true);
    }
    return p;
}

BitVec SurfaceCodeLayout::face_syndrome(const BitVec &x) const {
    if (x.size() != m) {
        throw std::invalid_argument("bit string length differs from m");
    }
    BitVec s(face_stabilizers.size());
    for (size_t f = 0; f < face_stabilizers.size(); f++) {
        bool b = false;
        for (size_t q : face_stabilizers[f]) {
            b ^= x.get(q);
        }
        s.set(f, b);
    }
    return s;
}

BitVec SurfaceCodeLayout::vertex_syndrome(const BitVec &z) const {
    if (z.size() != m) {
        throw std::invalid_argument("bit string length differs from m");
    }
    BitVec s(vertex_stabilizers.size());
    for (size_t v = 0; v < vertex_stabilizers.size(); v++) {
        bool b = false;
        for (size_t q : vertex_stabilizers[v]) {
            b ^= z.get(q);
        }
        s.set(v, b);
    }
    return s;
}

bool SurfaceCodeLayout::parity(const BitVec &x) const {
    if (x.size() != m) {
        throw std::invalid_argument("bit string length differs from m");
    }
    bool b = false;
    for (size_t q : diag) {
        b ^= x.get(q);
    }
    return b;
}

SurfaceCodeLayout build_layout(int d) {
    if (d < 2) {
        throw std::invalid_argument("surface code distance must be at least 2");
    }
    SurfaceCodeLayout L;
    L.d = d;
    int w = 2 * d - 1;
    L.grid.assign(w * w, -1);
    std::vector<int> vertex_at(w * w, -1), face_at(w * w, -1);
    for (int b = 0; b < w; b++) {
        for (int a = 0; a < w; a++) {
            if ((a + b) % 2 == 0) {
                L.grid[b * w + a] = static_cast<int>(L.qubit_coord.size());
                L.qubit_coord.push_back({a, b});
            } else if (a % 2 == 1) {
                vertex_at[b * w + a] = static_cast<int>(L.vertex_coord.size());
                L.vertex_coord.push_back({a, b});
            } else {
                face_at[b * w + a] = static_cast<int>(L.face_coord.size());
                L.face_coord.push_back({a, b});
            }
        }
    }
    L.m = L.qubit_coord.size();
    auto neighbours = [&](std::array<int, 2> c) {
        std::vector<size_t> out;
        const int da[4] = {0, -1, 1, 0};
        const int db[4] = {-1, 0, 0, 1};
        for (int k = 0; k < 4; k++) {
            int q = L.qubit_at(c[0] + da[k], c[1] + db[k]);
            if (q >= 0) {
                out.push_back(q);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    for (auto c : L.vertex_coord) {
        L.vertex_stabilizers.push_back(neighbours(c));
    }
    for (auto c : L.face_coord) {
        L.face_stabilizers.push_back(neighbours(c));
    }
    L.sigma.resize(L.m);
    for (size_t q = 0; q < L.m; q++) {
        auto [a, b] = L.qubit_coord[q];
        L.sigma[q] = L.qubit_at(b, a);
        if (a == b) {
            L.diag.push_back(q);
        } else if (a > b) {
            L.top.push_back(q);
        }
    }
    for (auto [a, b] : L.vertex_coord) {
        L.sigma_vertex.push_back(face_at[a * w + b]);
    }
    for (auto [a, b] : L.face_coord) {
        L.sigma_face.push_back(vertex_at[a * w + b]);
    }
    // Qubit-to-stabilizer incidence gives the two matching graphs; edge id = qubit index.
    std::vector<std::vector<int>> faces_of(L.m), vertices_of(L.m);
    for (size_t f = 0; f < L.face_stabilizers.size(); f++) {
        for (size_t q : L.face_stabilizers[f]) {
            faces_of[q].push_back(static_cast<int>(f));
        }
    }
    for (size_t v = 0; v < L.vertex_stabilizers.size(); v++) {
        for (size_t q : L.vertex_stabilizers[v]) {
            vertices_of[q].push_back(static_cast<int>(v));
        }
    }
    L.face_graph = DefectGraph(L.face_stabilizers.size());
    L.vertex_graph = DefectGraph(L.vertex_stabilizers.size());
    for (size_t q = 0; q < L.m; q++) {
        const auto &fs = faces_of[q];
        L.face_graph.add_edge(fs[0], fs.size() == 2 ? fs[1] : DefectGraph::BOUNDARY);
        const auto &vs = vertices_of[q];
        L.vertex_graph.add_edge(vs[0], vs.size() == 2 ? vs[1] : DefectGraph::BOUNDARY);
    }
    return L;
}

size_t logical_gate_depth(GateKind k) {
    switch (k) {
        case GateKind::H:
            return 2;
        case GateKind::CZ:
            return 5;
        default:
            return 1;
    }
}

namespace {

void push_h(const SurfaceCodeLayout &L, uint32_t off, std::vector<std::vector<Gate>> &layers) {
    std::vector<Gate> swaps, hs;
    for (size_t e : L.top) {
        swaps.push_back(Gate{GateKind::SWAP, uint32_t(off + e), uint32_t(off + L.sigma[e]), {}});
    }
    for (size_t q = 0; q < L.m; q++) {
        hs.push_back(Gate{GateKind::H, uint32_t(off + q), 0, {}});
    }
    layers.push_back(std::move(swaps));
    layers.push_back(std::move(hs));
}

}  // namespace

std::vector<std::vector<Gate>> logical_gate_layers(const SurfaceCodeLayout &L, GateKind k, uint32_t off0,
                                                   uint32_t off1) {
    std::vector<std::vector<Gate>> layers;
    switch (k) {
        case GateKind::H:
            push_h(L, off0, layers);
            break;
        case GateKind::S:
        case GateKind::S_DAG: {
            // phi(e) = +1 on horizontal edges, -1 on vertical ones; S_DAG inverts every phase gate.
            std::vector<Gate> layer;
            for (size_t e : L.diag) {
                bool plus = L.is_horizontal(e) == (k == GateKind::S);
                layer.push_back(Gate{plus ? GateKind::S : GateKind::S_DAG, uint32_t(off0 + e), 0, {}});
            }
            for (size_t e : L.top) {
                layer.push_back(Gate{GateKind::CZ, uint32_t(off0 + e), uint32_t(off0 + L.sigma[e]), {}});
            }
            layers.push_back(std::move(layer));
            break;
        }
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z: {
            std::vector<Gate> layer;
            for (size_t e : L.diag) {
                layer.push_back(Gate{k, uint32_t(off0 + e), 0, {}});
            }
            layers.push_back(std::move(layer));
            break;
        }
        case GateKind::CNOT:
        case GateKind::SWAP: {
            std::vector<Gate> layer;
            for (size_t q = 0; q < L.m; q++) {
                layer.push_back(Gate{k, uint32_t(off0 + q), uint32_t(off1 + q), {}});
            }
            layers.push_back(std::move(layer));
            break;
        }
        case GateKind::CZ: {
            push_h(L, off1, layers);
            auto cnot = logical_gate_layers(L, GateKind::CNOT, off0, off1);
            layers.push_back(std::move(cnot[0]));
            push_h(L, off1, layers);
            break;
        }
    }
    return layers;
}

namespace {

LayeredCliffordCircuit from_layers(size_t n, const std::vector<std::vector<Gate>> &layers) {
    LayeredCliffordCircuit c(n);
    for (const auto &layer : layers) {
        c.new_layer();
        for (const auto &g : layer) {
            c.add_gate(g);
        }
    }
    return c;
}

}  // namespace

LayeredCliffordCircuit logical_h_circuit(const SurfaceCodeLayout &layout) {
    LayeredCliffordCircuit c = from_layers(layout.m, logical_gate_layers(layout, GateKind::H, 0));
    c.coords = folded_coords(layout);
    return c;
}

LayeredCliffordCircuit logical_s_circuit(const SurfaceCodeLayout &layout) {
    LayeredCliffordCircuit c = from_layers(layout.m, logical_gate_layers(layout, GateKind::S, 0));
    c.coords = folded_coords(layout);
    return c;
}

LayeredCliffordCircuit transversal_cnot_circuit(const SurfaceCodeLayout &layout) {
    LayeredCliffordCircuit c =
        from_layers(2 * layout.m, logical_gate_layers(layout, GateKind::CNOT, 0, static_cast<uint32_t>(layout.m)));
    c.coords = folded_coords(layout, 0);
    auto second = folded_coords(layout, 1);
    c.coords.insert(c.coords.end(), second.begin(), second.end());
    return c;
}

std::vector<Coord> folded_coords(const SurfaceCodeLayout &layout, int z) {
    std::vector<Coord> out;
    out.reserve(layout.m);
    for (auto [a, b] : layout.qubit_coord) {
        out.push_back({std::max(a, b), std::min(a, b), z});
    }
    return out;
}

BitVec cor(const SurfaceCodeLayout &layout, const BitVec &x) {
    return layout.face_graph.min_weight_matching(layout.face_syndrome(x));
}

bool dec(const SurfaceCodeLayout &layout, const BitVec &x) { return layout.parity(cor(layout, x) ^ x); }

BitVec cor_dual(const SurfaceCodeLayout &layout, const BitVec &z) {
    return layout.vertex_graph.min_weight_matching(layout.vertex_syndrome(z));
}

bool dec_dual(const SurfaceCodeLayout &layout, const BitVec &z) { return layout.parity(cor_dual(layout, z) ^ z); }

double memory_failure_bound(int d, double q) { return 3.0 * d * std::pow(6.0 * std::sqrt(q), d); }

MemoryEstimate memory_failure_rate(const SurfaceCodeLayout &layout, double q, uint64_t trials, uint64_t seed,
                                   int jobs) {
    if (!(q >= 0 && q <= 1)) {
        throw std::invalid_argument("q must lie in [0, 1]");
    }
    std::vector<uint8_t> failed(trials, 0);
    parallel_for(trials, jobs, [&](size_t i) {
        auto rng = trial_rng(seed, i);
        BitVec v(layout.m);
        for (size_t e = 0; e < layout.m; e++) {
            if (bernoulli(rng, q)) {
                v.set(e, true);
            }
        }
        failed[i] = dec(layout, v);
    });
    MemoryEstimate est;
    est.d = layout.d;
    est.q = q;
    est.trials = trials;
    for (uint8_t f : failed) {
        est.failures += f;
    }
    est.rate = trials ? double(est.failures) / double(trials) : 0.0;
    est.bound = memory_failure_bound(layout.d, q);
    return est;
}

std::string memory_csv(const std::vector<MemoryEstimate> &rows) {
    std::ostringstream os;
    os.precision(10);
    os << "d,q,trials,failures,rate,bound\n";
    for (const auto &r : rows) {
        os << r.d << ',' << r.q << ',' << r.trials << ',' << r.failures << ',' << r.rate << ',' << r.bound << '\n';
    }
    return os.str();
}

}  // namespace shallowsep
