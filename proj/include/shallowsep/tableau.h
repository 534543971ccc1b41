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

#ifndef SHALLOWSEP_TABLEAU_H
#define SHALLOWSEP_TABLEAU_H

#include <optional>
#include <random>
#include <vector>

#include "shallowsep/circuit.h"
#include "shallowsep/pauli.h"

namespace shallowsep {

/// Result of a single-qubit Z measurement.
struct MeasureResult {
    bool outcome;
    bool was_random;
};

/// Stabilizer state on n qubits stored as n stabilizer and n destabilizer rows.
class StabilizerTableau {
   public:
    /// The state |0...0>.
    explicit StabilizerTableau(size_t n);

    /// Builds the state stabilized by the given independent commuting Hermitian Paulis (n of them on n qubits).
    static StabilizerTableau from_stabilizers(const std::vector<PauliOp> &stabilizers);

    size_t num_qubits() const { return n_; }
    const std::vector<PauliOp> &stabilizers() const { return stab_; }
    const std::vector<PauliOp> &destabilizers() const { return destab_; }

    void apply_gate(GateKind k, uint32_t q0, uint32_t q1 = 0);
    void apply_circuit(const LayeredCliffordCircuit &c, const BitVec &inputs);
    void apply_pauli(const PauliOp &p);

    /// Measures Z on qubit q. Random outcomes are drawn from rng.
    MeasureResult measure_z(size_t q, std::mt19937_64 &rng);
    /// Measures Z on qubit q and forces the outcome when it is random. Returns false when the requested outcome has
    /// zero probability (the state is left untouched in that case).
    bool measure_z_forced(size_t q, bool outcome);
    /// Deterministic outcome of measuring Z_q, or nullopt if it is random.
    std::optional<bool> peek_z(size_t q) const;

    /// Expectation of a Hermitian Pauli: +1, -1 or 0.
    int expectation(const PauliOp &p) const;

    /// Whether the computational basis string z has nonzero probability.
    bool support_contains(const BitVec &z) const;

    /// Reduced state on the listed qubits after all other qubits have been measured (so that the state factorizes).
    /// Throws if the listed qubits are still entangled with the rest.
    StabilizerTableau restricted_to(const std::vector<size_t> &qubits) const;

   private:
    void row_mul(PauliOp &target, const PauliOp &source) const;

    size_t n_;
    std::vector<PauliOp> stab_;
    std::vector<PauliOp> destab_;
};

/// Whether z_out is in the support of C|0...0>.
bool support_membership(const LayeredCliffordCircuit &c, const BitVec &inputs, const BitVec &z_out);

/// Finds Paulis D_i with D_i anticommuting with S_i and commuting with every other S_j and with each other.
/// The S_i must be independent and pairwise commuting, at most n of them.
std::vector<PauliOp> pure_errors(const std::vector<PauliOp> &stabilizers);

}  // namespace shallowsep

#endif
