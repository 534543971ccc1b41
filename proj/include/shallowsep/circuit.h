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

#ifndef SHALLOWSEP_CIRCUIT_H
#define SHALLOWSEP_CIRCUIT_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "shallowsep/bitvec.h"
#include "shallowsep/pauli.h"

namespace shallowsep {

enum class GateKind : uint8_t { H, S, S_DAG, X, Y, Z, CNOT, CZ, SWAP };

const char *gate_name(GateKind k);
GateKind gate_from_name(const std::string &name);
bool is_two_qubit(GateKind k);

/// Conjunction of literals over the circuit's classical input bits. Empty means always active.
struct Control {
    std::vector<std::pair<uint32_t, bool>> literals;

    bool empty() const { return literals.empty(); }
    bool eval(const BitVec &inputs) const;
    /// True when no input assignment satisfies both.
    bool exclusive_with(const Control &other) const;
    Control operator&(const Control &other) const;
    std::string str() const;
};

struct Gate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = 0;
    Control control;

    std::vector<uint32_t> targets() const;
};

using Coord = std::array<int, 3>;

/// A sequence of layers of Clifford gates, each optionally controlled by classical input bits.
///
/// Within a layer, two gates that can be active for the same inputs act on disjoint qubits.
class LayeredCliffordCircuit {
   public:
    LayeredCliffordCircuit() = default;
    LayeredCliffordCircuit(size_t num_qubits, size_t num_inputs = 0) : num_qubits_(num_qubits), num_inputs_(num_inputs) {}

    size_t num_qubits() const { return num_qubits_; }
    size_t num_inputs() const { return num_inputs_; }
    size_t depth() const { return layers_.size(); }
    const std::vector<std::vector<Gate>> &layers() const { return layers_; }
    std::vector<std::vector<Gate>> &mutable_layers() { return layers_; }

    /// Starts a new empty layer and returns its index.
    size_t new_layer();
    /// Adds a gate to the last layer; checks the support rule.
    void add(GateKind k, uint32_t q0, Control c = {});
    void add(GateKind k, uint32_t q0, uint32_t q1, Control c = {});
    void add_gate(const Gate &g);
    /// Appends the layers of another circuit on the same qubits.
    void append(const LayeredCliffordCircuit &other);

    /// Throws std::invalid_argument describing the first violated structural rule.
    void validate() const;

    /// Gates of layer `t` whose controls are satisfied. Throws if `inputs` is too short.
    std::vector<const Gate *> active_gates(size_t t, const BitVec &inputs) const;
    /// Number of layers with at least one active gate.
    size_t active_depth(const BitVec &inputs) const;
    /// Drops inactive gates and controls, and removes layers that become empty.
    LayeredCliffordCircuit resolved(const BitVec &inputs) const;
    /// Repacks gates of an uncontrolled circuit into as-soon-as-possible layers, keeping gate order per qubit.
    LayeredCliffordCircuit compacted() const;
    size_t gate_count() const;

    std::vector<Coord> coords;
    std::vector<std::string> input_names;

   private:
    void check_inputs(const BitVec &inputs) const;

    size_t num_qubits_ = 0;
    size_t num_inputs_ = 0;
    std::vector<std::vector<Gate>> layers_;
};

/// Conjugates p by a single gate: p <- G p G^dagger.
void conjugate_by_gate(GateKind k, uint32_t q0, uint32_t q1, PauliOp &p);
/// Conjugates p by the active gates of one layer.
void conjugate_by_layer(const LayeredCliffordCircuit &c, size_t t, const BitVec &inputs, PauliOp &p);
/// Returns C p C^dagger where C is the circuit for the given inputs.
PauliOp conjugate_pauli(const LayeredCliffordCircuit &c, const BitVec &inputs, const PauliOp &p);
/// Returns C^dagger p C.
PauliOp conjugate_pauli_inverse(const LayeredCliffordCircuit &c, const BitVec &inputs, const PauliOp &p);

/// Maximum over active two-qubit gates of the Manhattan distance between the gate's qubits, using c.coords.
int max_gate_diameter(const LayeredCliffordCircuit &c, const BitVec &inputs);

}  // namespace shallowsep

#endif
