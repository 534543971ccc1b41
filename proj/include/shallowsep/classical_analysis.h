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

#ifndef SHALLOWSEP_CLASSICAL_ANALYSIS_H
#define SHALLOWSEP_CLASSICAL_ANALYSIS_H

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "shallowsep/bitvec.h"

namespace shallowsep {

struct DagGate {
    std::string kind;
    std::vector<int> inputs;  // node ids
    int output = -1;          // node id defined by this gate
    std::map<std::string, int64_t> params;
};

/// Boolean circuit as a netlist. Node ids 0 .. num_inputs()-1 are the inputs and every gate defines one new id.
///
/// Built-in kinds: buf, not, and, or, xor, nand, nor, xnor, maj, const0, const1. Other kinds are structural only and
/// need a custom evaluator.
class BooleanDag {
   public:
    std::vector<std::string> input_names;
    std::vector<DagGate> gates;
    std::vector<int> outputs;
    std::vector<std::string> output_names;

    size_t num_inputs() const { return input_names.size(); }
    size_t num_nodes() const { return input_names.size() + gates.size(); }

    /// Checks ids and acyclicity and sorts the gates topologically. Throws std::invalid_argument.
    void finalize();
    /// Longest input-to-output path, counted in gates.
    int depth() const;
    int max_fan_in() const;
    /// Position of a node id in evaluation order (inputs first, then gates in order).
    size_t position(int id) const;

    /// {"inputs": [...], "gates": [{"kind", "inputs", "output", "params"}], "outputs": [...], "output_names": [...],
    /// "depth", "max_fan_in"}.
    std::string to_json() const;
    /// Parses and finalizes. When "depth" or "max_fan_in" are present they must match the netlist.
    static BooleanDag from_json(const std::string &text);

    using CustomEval = std::function<bool(const DagGate &gate, const std::vector<bool> &in)>;
    /// Values of all nodes in evaluation order.
    std::vector<bool> evaluate_nodes(const BitVec &inputs, const CustomEval &custom = nullptr) const;
    BitVec evaluate(const BitVec &inputs, const CustomEval &custom = nullptr) const;

   private:
    std::unordered_map<int, size_t> pos_;
    bool finalized_ = false;
    void require_finalized() const;
};

/// Inputs reachable backwards from an output, as a bit string over the inputs.
BitVec backward_lightcone(const BooleanDag &dag, size_t output);
/// Outputs reachable forwards from an input, as a bit string over the outputs.
BitVec forward_lightcone(const BooleanDag &dag, size_t input);
/// Backward lightcones of all outputs in one pass.
std::vector<BitVec> all_backward_lightcones(const BooleanDag &dag);

/// Inputs i for which some assignment changes the output when bit i is flipped. Exhaustive; at most 12 inputs.
BitVec correlated_inputs(const BooleanDag &dag, size_t output, const BooleanDag::CustomEval &custom = nullptr);

/// Inputs and outputs of a DAG grouped by the 1D Magic Square labels alpha<j>, beta<j>, x<j>, y<j>; a label may carry
/// a ".<bit>" suffix.
struct MspLabels {
    int n = 0;
    std::vector<std::vector<size_t>> alpha, beta;  // input indices, index j-1
    std::vector<std::vector<size_t>> x, y;         // output indices
    static MspLabels from_dag(const BooleanDag &dag);
};

/// Whether the forward lightcones of alpha_j and beta_k are disjoint, y_k misses the lightcone of alpha_j, and x_j
/// misses the lightcone of beta_k. Throws std::invalid_argument when labels are missing.
bool check_event_ec(const BooleanDag &dag, int j, int k);

/// Fraction of pairs 1 <= j < k <= n for which the event holds.
double event_ec_probability(const BooleanDag &dag);

/// Lower bound 1 - 80 K^{2D} / n on that fraction.
double event_ec_bound(int n, int fan_in, int depth);

/// Layered random circuit: depth layers of width gates, each gate reading fan_in distinct nodes of the previous
/// layer (the inputs for the first). Outputs are the last layer. Gate kinds are drawn from xor, and, or.
BooleanDag random_layered_dag(size_t num_inputs, size_t width, int depth, int fan_in, std::mt19937_64 &rng);

/// Random layered circuit with the 1D Magic Square labels: 4n inputs alpha<j>.1/2, beta<j>.1/2 and 4n outputs
/// x<j>.1/2, y<j>.1/2.
BooleanDag random_msp_dag(int n, int depth, int fan_in, std::mt19937_64 &rng);

/// Full binary XOR tree of the given depth on 2^depth inputs.
BooleanDag xor_tree(int depth);

}  // namespace shallowsep

#endif
