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

#ifndef SHALLOWSEP_DECODE_NETLIST_H
#define SHALLOWSEP_DECODE_NETLIST_H

#include <memory>

#include "shallowsep/classical_analysis.h"
#include "shallowsep/ft_pipeline.h"

namespace shallowsep {

/// Explicit classical circuit computing z_out from (b, s, y) for one pipeline.
///
/// Inputs are b (4n bits, named b<k>), then s (cube-major, s<c>.<a>), then y (block-major, y<L>.<q>). Layers:
///   rec:  one gate per (cube, B qubit, component) reading the cube's |A| syndrome bits;
///   prop: one gate per (logical layer, touched qubit, component) reading the control bits of the gates on that
///         qubit and the (x, z) bits of every qubit those gates touch; a qubit no gate touches gets an identity
///         gate, so every layer has one gate per (qubit, component);
///   xor:  y bit xor propagated X bit, per block qubit;
///   dec:  one gate per block reading its m xor bits.
/// Outputs are named and ordered like z_out (x<j>.1/2, then y<j>.1/2).
struct DecodeNetlist {
    BooleanDag dag;
    size_t num_b = 0;
    size_t num_s = 0;
    size_t num_y = 0;
    int logical_depth = 0;
    /// Largest number of control bits on one logical gate and largest number of qubits one gate acts on.
    int control_bits = 0;
    int gate_qubits = 0;
    int m = 0;
    int m_anc = 0;

    /// control_bits + 2 * gate_qubits + max(m, m_anc).
    int fan_in_bound() const;
};

DecodeNetlist build_decode_netlist(const FtPipeline &pipeline);

/// Evaluator for the rec, prop and dec gate kinds of the pipeline's netlist. Rec results are memoised per cube
/// syndrome, so one evaluator should not be shared between threads.
BooleanDag::CustomEval decode_netlist_evaluator(const FtPipeline &pipeline);

/// Input string b | s | y in netlist order.
BitVec decode_netlist_inputs(const BitVec &z_in, const BitVec &s, const BitVec &y);

}  // namespace shallowsep

#endif
