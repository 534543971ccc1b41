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

#ifndef SHALLOWSEP_CLUSTER3D_H
#define SHALLOWSEP_CLUSTER3D_H

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "shallowsep/bitvec.h"
#include "shallowsep/circuit.h"
#include "shallowsep/matching.h"
#include "shallowsep/noise_model.h"
#include "shallowsep/pauli.h"
#include "shallowsep/surface_code.h"
#include "shallowsep/tableau.h"

namespace shallowsep {

using Site = std::array<int, 3>;

/// A graph whose edges are lattice sites.
struct SiteGraph {
    DefectGraph graph;
    std::vector<Site> vertices;
    std::vector<size_t> edge_site;  // edge id -> site index
};

/// The cube C' = [1,r] x [0,r-1] x [1,r] with r = 2d-1, minus all-odd and all-even sites.
///
/// Region B holds two surface codes on the faces u3 = 1 and u3 = r. The surface code qubit at (a, b) sits at
/// (a+1, b, u3) on both faces. B is indexed face-major: b index = face * m + q.
struct ClusterLattice {
    int d = 0;
    int r = 0;
    SurfaceCodeLayout code;

    std::vector<Site> sites;
    std::vector<std::vector<size_t>> neigh;
    std::vector<size_t> region_a;
    std::vector<size_t> region_b;
    std::vector<int> a_index;  // site -> position in region_a or -1
    std::vector<int> b_index;  // site -> position in region_b or -1

    SiteGraph t_e;
    SiteGraph t_o;
    /// T_e with its dangling edges on the faces u3 = 1, r attached to the T_sc vertex at the same site.
    SiteGraph t_gl;
    /// Two copies of the surface-code primal (T_sc) and dual (T_sc*) graphs. Edge id = b index.
    DefectGraph t_sc;
    DefectGraph t_sc_dual;

    /// S0 generators: T_e vertices then T_o vertices, as exact products of G_u.
    std::vector<PauliOp> s0;
    /// S1 generators: T_sc vertices (face 0 then face 1, code vertex order), T_sc* vertices (same order), S1_X, S1_Z.
    std::vector<PauliOp> s1;
    /// Restrictions of the S1 generators to B with sign +1, and the sign bit of each S1 generator.
    std::vector<PauliOp> bell_stabilizers;
    BitVec s1_sign;
    BitVec s0_sign;
    /// One anticommuting partner per Bell stabilizer, on B.
    std::vector<PauliOp> bell_pure_errors;
    /// Supports on A of the S0 generators and of the S1 generators, as bit strings over A.
    std::vector<BitVec> s0_support;
    std::vector<BitVec> s1_support;

    size_t num_qubits() const { return sites.size(); }
    size_t num_s1_vertex() const { return code.vertex_stabilizers.size(); }
    size_t num_s1_face() const { return code.face_stabilizers.size(); }
    size_t s1x_index() const { return s1.size() - 2; }
    size_t s1z_index() const { return s1.size() - 1; }
    /// Site index at u, or -1 if u is outside C.
    int site_at(int u1, int u2, int u3) const;
    int site_at(const Site &u) const { return site_at(u[0], u[1], u[2]); }
    /// G_u = Z_u prod_{v in neigh(u)} X_v.
    PauliOp g(size_t site) const;
    /// Logical operators of block `face` (0 or 1) on B, with diagonal support.
    PauliOp logical_x_b(int face) const;
    PauliOp logical_z_b(int face) const;

    std::vector<int> grid;
};

ClusterLattice build_cluster(int d);

/// H on all sites, the nearest-neighbour CZs in four layers, H on all sites.
LayeredCliffordCircuit circuit_w(const ClusterLattice &lat);

/// Measured S0 syndrome: one bit per S0 generator (T_e vertices first), from bits over A.
BitVec syn0(const ClusterLattice &lat, const BitVec &s);
/// S0 syndrome of a Pauli (anticommutation pattern).
BitVec syn0_of(const ClusterLattice &lat, const PauliOp &e);
/// S1 syndrome of a Pauli.
BitVec syn1_of(const ClusterLattice &lat, const PauliOp &e);
/// sigma(s): eigenvalue bits of the Bell stabilizers on B after measuring A with outcome s.
BitVec sigma(const ClusterLattice &lat, const BitVec &s);

/// Minimum-weight X-type Pauli on A with the given S0 syndrome, by matching in T_e and T_o.
PauliOp proxy_m(const ClusterLattice &lat, const BitVec &defects);
/// Recovery on B (2m qubits) with S1 syndrome sigma(s) xor syn1(M(s)), from the pure-error basis.
PauliOp rec(const ClusterLattice &lat, const BitVec &s);

struct RepairDiagnostics {
    PauliOp rep_x;  // on B
    PauliOp rep_z;  // on B
    bool fail_x = false;
    bool fail_z = false;
    /// rep_x * rep_z times the logical corrections selected by the fail flags.
    PauliOp rep;
};

/// Repair decomposition for a known error e on C and the outcome s it produced.
RepairDiagnostics diagnose_repair(const ClusterLattice &lat, const PauliOp &e, const BitVec &s);

/// Logical class of a Pauli R on B applied to the ideal Bell state: its Bell-stabilizer syndrome is corrected by the
/// same T_sc / T_sc* matchings and the remainder is tested against X1X2 (z_flip) and Z1Z2 (x_flip).
struct BellClassification {
    BitVec syndrome;
    bool x_flip = false;
    bool z_flip = false;
    bool ok() const { return syndrome.none() && !x_flip && !z_flip; }
};
BellClassification classify_bell_residual(const ClusterLattice &lat, const PauliOp &residual);

struct PrepOutcome {
    BitVec s;
    StabilizerTableau b_state{0};
    PauliOp injected_error;
    std::optional<RepairDiagnostics> diagnostics;
};

/// Full tableau simulation: W on |0>, merged error E, measure A, apply rec(s) on B.
PrepOutcome run_bell_prep(const ClusterLattice &lat, const NoiseSpec &spec, std::mt19937_64 &rng,
                          bool with_diagnostics = false);

/// Signs of the 2m Bell stabilizers on a B-state: +1, -1 or 0.
std::vector<int> bell_stabilizer_signs(const ClusterLattice &lat, const StabilizerTableau &b_state);

}  // namespace shallowsep

#endif
