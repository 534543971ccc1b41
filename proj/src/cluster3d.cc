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

#include "shallowsep/cluster3d.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace shallowsep {

namespace {

bool in_cube(int r, int u1, int u2, int u3) { return u1 >= 1 && u1 <= r && u2 >= 0 && u2 <= r - 1 && u3 >= 1 && u3 <= r; }

bool odd(int v) { return v % 2 != 0; }

const int kDirs[6][3] = {{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}};

/// Sites in C at unit distance from a site of C' (which need not hold a qubit).
std::vector<size_t> neighbours_of(const ClusterLattice &lat, const Site &u) {
    std::vector<size_t> out;
    for (const auto &dv : kDirs) {
        int s = lat.site_at(u[0] + dv[0], u[1] + dv[1], u[2] + dv[2]);
        if (s >= 0) {
            out.push_back(static_cast<size_t>(s));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BitVec restrict_bits(const BitVec &bits, const std::vector<size_t> &region) {
    BitVec out(region.size());
    for (size_t i = 0; i < region.size(); i++) {
        if (bits.get(region[i])) {
            out.set(i, true);
        }
    }
    return out;
}

/// Builds a graph whose edges are the given sites; endpoints(site) lists the C' vertices the edge touches.
template <typename Endpoints>
SiteGraph make_site_graph(const std::vector<Site> &vertices, const std::vector<size_t> &edge_sites, Endpoints endpoints) {
    SiteGraph g;
    g.vertices = vertices;
    std::map<Site, int> vid;
    for (size_t i = 0; i < vertices.size(); i++) {
        vid[vertices[i]] = static_cast<int>(i);
    }
    g.graph = DefectGraph(vertices.size());
    for (size_t e : edge_sites) {
        std::vector<int> ends;
        for (const Site &v : endpoints(e)) {
            auto it = vid.find(v);
            if (it != vid.end()) {
                ends.push_back(it->second);
            }
        }
        if (ends.empty()) {
            continue;  // Isolated edge: it never carries syndrome.
        }
        if (ends.size() > 2) {
            throw std::logic_error("edge with more than two endpoints");
        }
        g.graph.add_edge(ends[0], ends.size() == 2 ? ends[1] : DefectGraph::BOUNDARY);
        g.edge_site.push_back(e);
    }
    return g;
}

}  // namespace

int ClusterLattice::site_at(int u1, int u2, int u3) const {
    if (!in_cube(r, u1, u2, u3)) {
        return -1;
    }
    return grid[((u1 - 1) * r + u2) * r + (u3 - 1)];
}

PauliOp ClusterLattice::g(size_t site) const {
    PauliOp p(sites.size());
    p.z.set(site, true);
    for (size_t v : neigh[site]) {
        p.x.set(v, true);
    }
    return p;
}

PauliOp ClusterLattice::logical_x_b(int face) const {
    PauliOp p(region_b.size());
    for (size_t q : code.diag) {
        p.x.set(face * code.m + q, true);
    }
    return p;
}

PauliOp ClusterLattice::logical_z_b(int face) const {
    PauliOp p(region_b.size());
    for (size_t q : code.diag) {
        p.z.set(face * code.m + q, true);
    }
    return p;
}

ClusterLattice build_cluster(int d) {
    if (d < 2) {
        throw std::invalid_argument("cluster distance must be at least 2");
    }
    ClusterLattice lat;
    lat.d = d;
    lat.r = 2 * d - 1;
    lat.code = build_layout(d);
    const int r = lat.r;
    const size_t m = lat.code.m;
    lat.grid.assign(size_t(r) * r * r, -1);
    for (int u1 = 1; u1 <= r; u1++) {
        for (int u2 = 0; u2 <= r - 1; u2++) {
            for (int u3 = 1; u3 <= r; u3++) {
                int n_odd = odd(u1) + odd(u2) + odd(u3);
                if (n_odd == 0 || n_odd == 3) {
                    continue;
                }
                lat.grid[((u1 - 1) * r + u2) * r + (u3 - 1)] = static_cast<int>(lat.sites.size());
                lat.sites.push_back({u1, u2, u3});
            }
        }
    }
    const size_t n = lat.sites.size();
    for (size_t i = 0; i < n; i++) {
        lat.neigh.push_back(neighbours_of(lat, lat.sites[i]));
    }

    // Region B, face-major in code-qubit order.
    lat.b_index.assign(n, -1);
    lat.a_index.assign(n, -1);
    const int faces[2] = {1, r};
    for (int f = 0; f < 2; f++) {
        for (size_t q = 0; q < m; q++) {
            auto [a, b] = lat.code.qubit_coord[q];
            int s = lat.site_at(a + 1, b, faces[f]);
            if (s < 0) {
                throw std::logic_error("surface code qubit outside the cube");
            }
            lat.b_index[s] = static_cast<int>(lat.region_b.size());
            lat.region_b.push_back(s);
        }
    }
    for (size_t i = 0; i < n; i++) {
        if (lat.b_index[i] < 0) {
            lat.a_index[i] = static_cast<int>(lat.region_a.size());
            lat.region_a.push_back(i);
        }
    }

    // T_e and T_o. An edge site touches the vertices obtained by moving its odd-one-out coordinate by 1.
    std::vector<Site> te_vertices, to_vertices;
    std::vector<size_t> te_edges, to_edges;
    for (int u1 = 1; u1 <= r; u1++) {
        for (int u2 = 0; u2 <= r - 1; u2++) {
            for (int u3 = 1; u3 <= r; u3++) {
                if (!odd(u1) && !odd(u2) && !odd(u3)) {
                    te_vertices.push_back({u1, u2, u3});
                }
                if (odd(u1) && odd(u2) && odd(u3) && u3 != 1 && u3 != r) {
                    to_vertices.push_back({u1, u2, u3});
                }
            }
        }
    }
    for (size_t i = 0; i < n; i++) {
        const Site &u = lat.sites[i];
        int n_odd = odd(u[0]) + odd(u[1]) + odd(u[2]);
        if (n_odd == 1) {
            te_edges.push_back(i);
        } else if (lat.b_index[i] < 0) {
            to_edges.push_back(i);
        }
    }
    auto flip_coord = [&](size_t e, bool want_odd) {
        const Site &u = lat.sites[e];
        // The coordinate whose parity differs from the vertex type.
        std::vector<Site> out;
        for (int k = 0; k < 3; k++) {
            if (odd(u[k]) == want_odd) {
                continue;
            }
            for (int dlt : {-1, 1}) {
                Site v = u;
                v[k] += dlt;
                if (in_cube(r, v[0], v[1], v[2])) {
                    out.push_back(v);
                }
            }
        }
        return out;
    };
    lat.t_e = make_site_graph(te_vertices, te_edges, [&](size_t e) { return flip_coord(e, false); });
    lat.t_o = make_site_graph(to_vertices, to_edges, [&](size_t e) { return flip_coord(e, true); });

    // T_gl: T_e plus the T_sc vertices; T_e edges leaving through u3 = 1, r end at the T_sc vertex on the same site.
    std::vector<Site> gl_vertices = te_vertices;
    for (int f = 0; f < 2; f++) {
        for (auto [a, b] : lat.code.vertex_coord) {
            gl_vertices.push_back({a + 1, b, faces[f]});
        }
    }
    std::vector<size_t> gl_edges = te_edges;
    gl_edges.insert(gl_edges.end(), lat.region_b.begin(), lat.region_b.end());
    lat.t_gl = make_site_graph(gl_vertices, gl_edges, [&](size_t e) {
        const Site &u = lat.sites[e];
        if (lat.b_index[e] >= 0) {
            return flip_coord(e, false);
        }
        std::vector<Site> out = flip_coord(e, false);
        if (u[2] == 1 || u[2] == r) {
            out.push_back(u);
        }
        return out;
    });

    // Two copies of the code graphs; edge id = b index.
    size_t nv = lat.code.vertex_stabilizers.size();
    size_t nf = lat.code.face_stabilizers.size();
    lat.t_sc = DefectGraph(2 * nv);
    lat.t_sc_dual = DefectGraph(2 * nf);
    for (int f = 0; f < 2; f++) {
        for (size_t q = 0; q < m; q++) {
            const auto &ev = lat.code.vertex_graph.edge(q);
            lat.t_sc.add_edge(ev.u + f * nv, ev.v == DefectGraph::BOUNDARY ? ev.v : ev.v + int(f * nv));
            const auto &ef = lat.code.face_graph.edge(q);
            lat.t_sc_dual.add_edge(ef.u + f * nf, ef.v == DefectGraph::BOUNDARY ? ef.v : ef.v + int(f * nf));
        }
    }

    // S0 generators.
    auto product_of = [&](const std::vector<size_t> &support) {
        PauliOp p(n);
        for (size_t v : support) {
            p *= lat.g(v);
        }
        return p;
    };
    auto a_support = [&](const PauliOp &p) {
        if (restrict_bits(p.x, lat.region_a).any()) {
            throw std::logic_error("generator has X or Y on region A");
        }
        return restrict_bits(p.z, lat.region_a);
    };
    for (const auto *verts : {&te_vertices, &to_vertices}) {
        for (const Site &u : *verts) {
            PauliOp p = product_of(neighbours_of(lat, u));
            if (p.x.any() || restrict_bits(p.z, lat.region_b).any()) {
                throw std::logic_error("S0 generator is not Z-type on A");
            }
            lat.s0.push_back(p);
        }
    }
    // S1 generators.
    for (int f = 0; f < 2; f++) {
        for (auto [a, b] : lat.code.vertex_coord) {
            lat.s1.push_back(lat.g(lat.site_at(a + 1, b, faces[f])));
        }
    }
    for (int f = 0; f < 2; f++) {
        for (auto [a, b] : lat.code.face_coord) {
            Site u{a + 1, b, faces[f]};
            int step = f == 0 ? 1 : -1;
            std::vector<size_t> support{static_cast<size_t>(lat.site_at(u[0], u[1], u[2] + step))};
            for (size_t v : neighbours_of(lat, u)) {
                if (lat.b_index[v] >= 0) {
                    support.push_back(v);
                }
            }
            lat.s1.push_back(product_of(support));
        }
    }
    {
        std::vector<size_t> sx, sz;
        for (int u2 = 0; u2 <= r - 1; u2 += 2) {
            for (int u3 = 2; u3 <= r - 1; u3 += 2) {
                sx.push_back(lat.site_at(1, u2, u3));
            }
        }
        for (int u1 = 1; u1 <= r; u1 += 2) {
            for (int u3 = 1; u3 <= r; u3 += 2) {
                sz.push_back(lat.site_at(u1, 0, u3));
            }
        }
        lat.s1.push_back(product_of(sx));
        lat.s1.push_back(product_of(sz));
    }

    lat.s0_sign = BitVec(lat.s0.size());
    for (size_t i = 0; i < lat.s0.size(); i++) {
        lat.s0_support.push_back(a_support(lat.s0[i]));
        lat.s0_sign.set(i, lat.s0[i].phase == 2);
    }
    lat.s1_sign = BitVec(lat.s1.size());
    for (size_t i = 0; i < lat.s1.size(); i++) {
        const PauliOp &p = lat.s1[i];
        if (p.phase & 1) {
            throw std::logic_error("S1 generator is not Hermitian");
        }
        lat.s1_support.push_back(a_support(p));
        lat.s1_sign.set(i, p.phase == 2);
        PauliOp rb = p.restricted(lat.region_b);
        rb.phase = 0;
        if (rb.x.any() && rb.z.any()) {
            throw std::logic_error("S1 generator is not CSS on region B");
        }
        lat.bell_stabilizers.push_back(rb);
    }
    lat.bell_pure_errors = pure_errors(lat.bell_stabilizers);
    return lat;
}

LayeredCliffordCircuit circuit_w(const ClusterLattice &lat) {
    size_t n = lat.num_qubits();
    LayeredCliffordCircuit c(n);
    c.coords.assign(lat.sites.begin(), lat.sites.end());
    c.new_layer();
    for (size_t i = 0; i < n; i++) {
        c.add(GateKind::H, static_cast<uint32_t>(i));
    }
    // The interaction graph is bipartite (one odd coordinate vs two) with degree <= 4. A site with a single odd
    // coordinate j has bonds along two directions; the bond along j+1 (mod 3) is class 0, the other class 1. The
    // second colour bit says whether that site is the lower endpoint. Each site then has at most one bond per colour.
    std::vector<std::vector<std::pair<size_t, size_t>>> colour(4);
    for (size_t i = 0; i < n; i++) {
        const Site &u = lat.sites[i];
        for (int k = 0; k < 3; k++) {
            Site v = u;
            v[k] += 1;
            int j = lat.site_at(v);
            if (j < 0) {
                continue;
            }
            const Site &w1 = (odd(u[0]) + odd(u[1]) + odd(u[2]) == 1) ? u : v;
            int odd_axis = odd(w1[0]) ? 0 : (odd(w1[1]) ? 1 : 2);
            int cls = (k == (odd_axis + 1) % 3) ? 0 : 1;
            int lower_is_single = (&w1 == &u) ? 1 : 0;
            colour[2 * cls + lower_is_single].push_back({i, static_cast<size_t>(j)});
        }
    }
    for (const auto &layer : colour) {
        c.new_layer();
        for (auto [a, b] : layer) {
            c.add(GateKind::CZ, static_cast<uint32_t>(a), static_cast<uint32_t>(b));
        }
    }
    c.new_layer();
    for (size_t i = 0; i < n; i++) {
        c.add(GateKind::H, static_cast<uint32_t>(i));
    }
    c.validate();
    return c;
}

BitVec syn0(const ClusterLattice &lat, const BitVec &s) {
    if (s.size() != lat.region_a.size()) {
        throw std::invalid_argument("s must have one bit per site of A");
    }
    BitVec out(lat.s0.size());
    for (size_t i = 0; i < lat.s0.size(); i++) {
        out.set(i, s.dot(lat.s0_support[i]) ^ lat.s0_sign.get(i));
    }
    return out;
}

BitVec sigma(const ClusterLattice &lat, const BitVec &s) {
    if (s.size() != lat.region_a.size()) {
        throw std::invalid_argument("s must have one bit per site of A");
    }
    BitVec out(lat.s1.size());
    for (size_t i = 0; i < lat.s1.size(); i++) {
        out.set(i, s.dot(lat.s1_support[i]) ^ lat.s1_sign.get(i));
    }
    return out;
}

BitVec syn0_of(const ClusterLattice &lat, const PauliOp &e) {
    BitVec xa = restrict_bits(e.x, lat.region_a);
    BitVec out(lat.s0.size());
    for (size_t i = 0; i < lat.s0.size(); i++) {
        out.set(i, xa.dot(lat.s0_support[i]));
    }
    return out;
}

BitVec syn1_of(const ClusterLattice &lat, const PauliOp &e) {
    BitVec xa = restrict_bits(e.x, lat.region_a);
    PauliOp eb = e.restricted(lat.region_b);
    BitVec out(lat.s1.size());
    for (size_t i = 0; i < lat.s1.size(); i++) {
        out.set(i, xa.dot(lat.s1_support[i]) ^ !lat.bell_stabilizers[i].commutes(eb));
    }
    return out;
}

PauliOp proxy_m(const ClusterLattice &lat, const BitVec &defects) {
    size_t ne = lat.t_e.vertices.size();
    size_t no = lat.t_o.vertices.size();
    if (defects.size() != ne + no) {
        throw std::invalid_argument("defect string has wrong length");
    }
    PauliOp m(lat.num_qubits());
    BitVec fe = lat.t_e.graph.min_weight_matching(defects.slice(0, ne));
    for (size_t e : fe.ones()) {
        m.x.flip(lat.t_e.edge_site[e]);
    }
    BitVec fo = lat.t_o.graph.min_weight_matching(defects.slice(ne, no));
    for (size_t e : fo.ones()) {
        m.x.flip(lat.t_o.edge_site[e]);
    }
    return m;
}

PauliOp rec(const ClusterLattice &lat, const BitVec &s) {
    PauliOp m = proxy_m(lat, syn0(lat, s));
    BitVec target = sigma(lat, s) ^ syn1_of(lat, m);
    PauliOp out(lat.region_b.size());
    for (size_t i : target.ones()) {
        out *= lat.bell_pure_errors[i];
    }
    out.phase = 0;
    return out;
}

namespace {

/// Z-type matching on T_sc and X-type matching on T_sc* for the vertex and face parts of an S1 syndrome.
std::pair<PauliOp, PauliOp> match_s1(const ClusterLattice &lat, const BitVec &syn) {
    size_t nv = 2 * lat.num_s1_vertex();
    size_t nf = 2 * lat.num_s1_face();
    PauliOp rz(lat.region_b.size()), rx(lat.region_b.size());
    for (size_t b : lat.t_sc.min_weight_matching(syn.slice(0, nv)).ones()) {
        rz.z.set(b, true);
    }
    for (size_t b : lat.t_sc_dual.min_weight_matching(syn.slice(nv, nf)).ones()) {
        rx.x.set(b, true);
    }
    return {rx, rz};
}

}  // namespace

RepairDiagnostics diagnose_repair(const ClusterLattice &lat, const PauliOp &e, const BitVec &s) {
    PauliOp m = proxy_m(lat, syn0(lat, s));
    BitVec t = syn1_of(lat, e) ^ syn1_of(lat, m);
    auto [rx, rz] = match_s1(lat, t);
    RepairDiagnostics out{rx, rz, false, false, PauliOp(lat.region_b.size())};
    out.fail_z = !rz.commutes(lat.bell_stabilizers[lat.s1x_index()]) != t.get(lat.s1x_index());
    out.fail_x = !rx.commutes(lat.bell_stabilizers[lat.s1z_index()]) != t.get(lat.s1z_index());
    out.rep = rx * rz;
    if (out.fail_z) {
        out.rep *= lat.logical_z_b(0);
    }
    if (out.fail_x) {
        out.rep *= lat.logical_x_b(0);
    }
    out.rep.phase = 0;
    return out;
}

BellClassification classify_bell_residual(const ClusterLattice &lat, const PauliOp &residual) {
    if (residual.num_qubits() != lat.region_b.size()) {
        throw std::invalid_argument("residual must act on region B");
    }
    BellClassification c;
    c.syndrome = BitVec(lat.bell_stabilizers.size());
    for (size_t i = 0; i < lat.bell_stabilizers.size(); i++) {
        c.syndrome.set(i, !lat.bell_stabilizers[i].commutes(residual));
    }
    auto [rx, rz] = match_s1(lat, c.syndrome);
    PauliOp rest = residual * rx * rz;
    c.z_flip = !rest.commutes(lat.bell_stabilizers[lat.s1x_index()]);
    c.x_flip = !rest.commutes(lat.bell_stabilizers[lat.s1z_index()]);
    c.syndrome.set(lat.s1x_index(), false);
    c.syndrome.set(lat.s1z_index(), false);
    return c;
}

PrepOutcome run_bell_prep(const ClusterLattice &lat, const NoiseSpec &spec, std::mt19937_64 &rng,
                          bool with_diagnostics) {
    LayeredCliffordCircuit w = circuit_w(lat);
    PrepOutcome out;
    out.injected_error = sample_merged_error(w, BitVec(), spec, rng);
    StabilizerTableau t(lat.num_qubits());
    t.apply_circuit(w, BitVec());
    t.apply_pauli(out.injected_error);
    out.s = BitVec(lat.region_a.size());
    for (size_t i = 0; i < lat.region_a.size(); i++) {
        out.s.set(i, t.measure_z(lat.region_a[i], rng).outcome);
    }
    out.b_state = t.restricted_to(lat.region_b);
    out.b_state.apply_pauli(rec(lat, out.s));
    if (with_diagnostics) {
        out.diagnostics = diagnose_repair(lat, out.injected_error, out.s);
    }
    return out;
}

std::vector<int> bell_stabilizer_signs(const ClusterLattice &lat, const StabilizerTableau &b_state) {
    std::vector<int> out;
    for (const auto &p : lat.bell_stabilizers) {
        out.push_back(b_state.expectation(p));
    }
    return out;
}

}  // namespace shallowsep
