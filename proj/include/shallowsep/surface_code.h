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

#ifndef SHALLOWSEP_SURFACE_CODE_H
#define SHALLOWSEP_SURFACE_CODE_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "shallowsep/bitvec.h"
#include "shallowsep/circuit.h"
#include "shallowsep/matching.h"
#include "shallowsep/pauli.h"

namespace shallowsep {

/// Distance-d surface code on a d x d lattice with smooth top/bottom and rough left/right boundaries.
///
/// Everything lives on the grid (a, b) in [0, 2d-2]^2, with a the column and b the row (row 0 at the top).
/// Qubits sit at a + b even: horizontal edges at (even, even), vertical edges at (odd, odd). Vertices are at
/// (odd, even) and faces at (even, odd). Horizontal edges in columns 0 and 2d-2 dangle, which makes the left and
/// right boundaries rough. The main diagonal is a = b and sigma is the reflection (a, b) -> (b, a).
struct SurfaceCodeLayout {
    int d = 0;
    size_t m = 0;

    std::vector<std::array<int, 2>> qubit_coord;
    std::vector<std::array<int, 2>> vertex_coord;
    std::vector<std::array<int, 2>> face_coord;
    /// Qubit supports of A_v and B_f.
    std::vector<std::vector<size_t>> vertex_stabilizers;
    std::vector<std::vector<size_t>> face_stabilizers;

    std::vector<size_t> diag;
    /// Qubits strictly above the diagonal (a > b).
    std::vector<size_t> top;
    std::vector<size_t> sigma;
    std::vector<size_t> sigma_vertex;  // vertex index -> face index
    std::vector<size_t> sigma_face;    // face index -> vertex index

    /// Dual lattice: vertices are faces, edge e is qubit e. Dangling edges at top and bottom.
    DefectGraph face_graph;
    /// Primal lattice: vertices are vertices, edge e is qubit e. Dangling edges at left and right.
    DefectGraph vertex_graph;

    /// Qubit index at (a, b), or -1.
    int qubit_at(int a, int b) const;
    bool is_horizontal(size_t q) const { return qubit_coord[q][0] % 2 == 0; }

    PauliOp vertex_stabilizer(size_t v) const;
    PauliOp face_stabilizer(size_t f) const;
    std::vector<PauliOp> stabilizers() const;
    PauliOp logical_x() const;
    PauliOp logical_z() const;

    /// Face (Z-type) syndrome of an X-type bit string, and vertex (X-type) syndrome of a Z-type bit string.
    BitVec face_syndrome(const BitVec &x) const;
    BitVec vertex_syndrome(const BitVec &z) const;
    /// Sum over the diagonal, mod 2.
    bool parity(const BitVec &x) const;

    std::vector<int> grid;  // (a, b) -> qubit or -1, row-major
};

SurfaceCodeLayout build_layout(int d);

/// Layers of the folded-code logical version of a bare gate, acting on the block at offset `off0` (and `off1` for
/// two-qubit gates). H: SWAP across the fold then H on all qubits. S, S_DAG: S^{+-1} on the diagonal with CZ across
/// the fold. X, Y, Z: the Pauli on the diagonal. CNOT, SWAP: transversal. CZ: logical H on the target around a
/// transversal CNOT.
std::vector<std::vector<Gate>> logical_gate_layers(const SurfaceCodeLayout &layout, GateKind k, uint32_t off0,
                                                   uint32_t off1 = 0);
/// Number of layers produced by logical_gate_layers for this gate kind.
size_t logical_gate_depth(GateKind k);

LayeredCliffordCircuit logical_h_circuit(const SurfaceCodeLayout &layout);
LayeredCliffordCircuit logical_s_circuit(const SurfaceCodeLayout &layout);
/// CNOT from block 0 (qubits 0..m-1) to block 1 (qubits m..2m-1).
LayeredCliffordCircuit transversal_cnot_circuit(const SurfaceCodeLayout &layout);

/// Folded 3D coordinates for one block: the qubit at (a, b) sits at (max(a, b), min(a, b), z), so e and sigma(e)
/// share a site.
std::vector<Coord> folded_coords(const SurfaceCodeLayout &layout, int z = 0);

/// Minimum-weight X-type string with the same face syndrome as x.
BitVec cor(const SurfaceCodeLayout &layout, const BitVec &x);
/// Parity(cor(x) xor x).
bool dec(const SurfaceCodeLayout &layout, const BitVec &x);
/// Dual versions: minimum-weight Z-type string with the same vertex syndrome, and its diagonal parity decision.
BitVec cor_dual(const SurfaceCodeLayout &layout, const BitVec &z);
bool dec_dual(const SurfaceCodeLayout &layout, const BitVec &z);

struct MemoryEstimate {
    int d = 0;
    double q = 0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double rate = 0;
    double bound = 0;
};

/// 3 d (6 sqrt(q))^d.
double memory_failure_bound(int d, double q);

/// Monte-Carlo estimate of Pr[Parity(cor(v) xor v) = 1] for iid X noise at rate q. Trial i uses trial_rng(seed, i).
MemoryEstimate memory_failure_rate(const SurfaceCodeLayout &layout, double q, uint64_t trials, uint64_t seed,
                                   int jobs = 1);

/// CSV with header d,q,trials,failures,rate,bound.
std::string memory_csv(const std::vector<MemoryEstimate> &rows);

}  // namespace shallowsep

#endif
