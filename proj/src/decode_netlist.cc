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

#include "shallowsep/decode_netlist.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "shallowsep/magic_square.h"

namespace shallowsep {

namespace {

enum : int64_t { kCompX = 0, kCompZ = 1 };

/// Gates of one logical layer that touch one qubit, with their control bits and joint support.
struct QubitSlot {
    std::vector<const Gate *> gates;
    std::vector<uint32_t> controls;
    std::vector<uint32_t> support;
};

using LayerSlots = std::map<uint32_t, QubitSlot>;

std::vector<LayerSlots> layer_slots(const LayeredCliffordCircuit &c) {
    std::vector<LayerSlots> out(c.depth());
    for (size_t t = 0; t < c.depth(); t++) {
        std::map<uint32_t, std::set<uint32_t>> controls, support;
        for (const Gate &g : c.layers()[t]) {
            for (uint32_t q : g.targets()) {
                out[t][q].gates.push_back(&g);
                for (auto [bit, value] : g.control.literals) {
                    (void)value;
                    controls[q].insert(bit);
                }
                for (uint32_t r : g.targets()) {
                    support[q].insert(r);
                }
            }
        }
        for (auto &[q, slot] : out[t]) {
            slot.controls.assign(controls[q].begin(), controls[q].end());
            slot.support.assign(support[q].begin(), support[q].end());
        }
    }
    return out;
}

/// Position of z_out bit o in the qubit-ordered string, i.e. the block that produces it.
std::vector<int> output_blocks(int n) {
    std::vector<int> block(size_t(4 * n), -1);
    for (int L = 0; L < 4 * n; L++) {
        BitVec unit(size_t(4 * n));
        unit.set(L, true);
        block[qubits_to_output(n, unit).ones().at(0)] = L;
    }
    return block;
}

std::string output_name(int n, size_t o) {
    bool beta = o >= size_t(2 * n);
    size_t r = beta ? o - 2 * n : o;
    return std::string(beta ? "y" : "x") + std::to_string(r / 2 + 1) + "." + std::to_string(r % 2 + 1);
}

}  // namespace

int DecodeNetlist::fan_in_bound() const { return control_bits + 2 * gate_qubits + std::max(m, m_anc); }

DecodeNetlist build_decode_netlist(const FtPipeline &pipeline) {
    const int n = pipeline.n();
    const size_t m = pipeline.block_size();
    const size_t na = pipeline.lattice().region_a.size();
    const LayeredCliffordCircuit &logical = pipeline.logical_circuit();
    const size_t nsys = logical.num_qubits();

    DecodeNetlist net;
    net.num_b = size_t(4 * n);
    net.num_s = na * size_t(pipeline.num_cubes());
    net.num_y = nsys;
    net.logical_depth = int(logical.depth());
    net.m = int(m);
    net.m_anc = int(na);
    for (const auto &layer : logical.layers()) {
        for (const Gate &g : layer) {
            net.control_bits = std::max(net.control_bits, int(g.control.literals.size()));
            net.gate_qubits = std::max(net.gate_qubits, int(g.targets().size()));
        }
    }

    BooleanDag &dag = net.dag;
    for (size_t k = 0; k < net.num_b; k++) {
        dag.input_names.push_back("b" + std::to_string(k));
    }
    for (int c = 0; c < pipeline.num_cubes(); c++) {
        for (size_t a = 0; a < na; a++) {
            dag.input_names.push_back("s" + std::to_string(c) + "." + std::to_string(a));
        }
    }
    for (size_t L = 0; L < size_t(4 * n); L++) {
        for (size_t q = 0; q < m; q++) {
            dag.input_names.push_back("y" + std::to_string(L) + "." + std::to_string(q));
        }
    }
    const int s_base = int(net.num_b);
    const int y_base = int(net.num_b + net.num_s);
    int next_id = int(dag.input_names.size());

    // Current node holding the X and Z bit of each system qubit.
    std::vector<int> cur_x(nsys, -1), cur_z(nsys, -1);
    for (int c = 0; c < pipeline.num_cubes(); c++) {
        std::vector<int> syn(na);
        for (size_t a = 0; a < na; a++) {
            syn[a] = s_base + int(size_t(c) * na + a);
        }
        for (size_t b = 0; b < 2 * m; b++) {
            size_t sys = size_t(cube_block(c, int(b / m))) * m + b % m;
            for (int64_t comp : {kCompX, kCompZ}) {
                dag.gates.push_back({"rec", syn, next_id, {{"cube", c}, {"qubit", int64_t(b)}, {"comp", comp}}});
                (comp == kCompX ? cur_x : cur_z)[sys] = next_id++;
            }
        }
    }

    std::vector<LayerSlots> slots = layer_slots(logical);
    for (size_t t = 0; t < slots.size(); t++) {
        std::vector<int> nx(nsys), nz(nsys);
        for (uint32_t q = 0; q < nsys; q++) {
            // A qubit no gate touches in this layer gets an identity gate on its own two bits.
            std::vector<int> in;
            auto it = slots[t].find(q);
            if (it == slots[t].end()) {
                in = {cur_x[q], cur_z[q]};
            } else {
                in.assign(it->second.controls.begin(), it->second.controls.end());
                for (uint32_t r : it->second.support) {
                    in.push_back(cur_x[r]);
                    in.push_back(cur_z[r]);
                }
            }
            for (int64_t comp : {kCompX, kCompZ}) {
                dag.gates.push_back({"prop", in, next_id, {{"layer", int64_t(t)}, {"qubit", q}, {"comp", comp}}});
                (comp == kCompX ? nx : nz)[q] = next_id++;
            }
        }
        cur_x = std::move(nx);
        cur_z = std::move(nz);
    }

    std::vector<int> masked(nsys);
    for (size_t q = 0; q < nsys; q++) {
        dag.gates.push_back({"xor", {y_base + int(q), cur_x[q]}, next_id, {}});
        masked[q] = next_id++;
    }
    std::vector<int> dec_node(size_t(4 * n));
    for (int L = 0; L < 4 * n; L++) {
        std::vector<int> in(masked.begin() + L * m, masked.begin() + (L + 1) * m);
        dag.gates.push_back({"dec", in, next_id, {{"block", L}}});
        dec_node[L] = next_id++;
    }
    std::vector<int> block = output_blocks(n);
    for (size_t o = 0; o < block.size(); o++) {
        dag.outputs.push_back(dec_node[block[o]]);
        dag.output_names.push_back(output_name(n, o));
    }
    dag.finalize();
    return net;
}

BooleanDag::CustomEval decode_netlist_evaluator(const FtPipeline &pipeline) {
    struct State {
        const FtPipeline *pipeline;
        std::vector<LayerSlots> slots;
        std::map<int64_t, std::pair<BitVec, PauliOp>> rec_memo;
    };
    auto st = std::make_shared<State>();
    st->pipeline = &pipeline;
    st->slots = layer_slots(pipeline.logical_circuit());
    return [st](const DagGate &g, const std::vector<bool> &in) -> bool {
        const FtPipeline &p = *st->pipeline;
        if (g.kind == "rec") {
            int64_t cube = g.params.at("cube");
            BitVec s(in.size());
            for (size_t a = 0; a < in.size(); a++) {
                s.set(a, in[a]);
            }
            auto it = st->rec_memo.find(cube);
            if (it == st->rec_memo.end() || it->second.first != s) {
                it = st->rec_memo.insert_or_assign(cube, std::make_pair(s, rec(p.lattice(), s))).first;
            }
            const PauliOp &r = it->second.second;
            size_t b = size_t(g.params.at("qubit"));
            return g.params.at("comp") == kCompX ? r.x.get(b) : r.z.get(b);
        }
        if (g.kind == "prop") {
            const LayerSlots &layer = st->slots.at(size_t(g.params.at("layer")));
            auto found = layer.find(uint32_t(g.params.at("qubit")));
            if (found == layer.end()) {
                return in.at(g.params.at("comp") == kCompX ? 0 : 1);
            }
            const QubitSlot &slot = found->second;
            size_t nc = slot.controls.size();
            uint32_t max_bit = nc ? slot.controls.back() : 0;
            BitVec b(size_t(max_bit) + 1);
            for (size_t i = 0; i < nc; i++) {
                b.set(slot.controls[i], in[i]);
            }
            PauliOp local(slot.support.size());
            for (size_t i = 0; i < slot.support.size(); i++) {
                local.x.set(i, in[nc + 2 * i]);
                local.z.set(i, in[nc + 2 * i + 1]);
            }
            auto local_of = [&](uint32_t q) {
                return uint32_t(std::lower_bound(slot.support.begin(), slot.support.end(), q) - slot.support.begin());
            };
            for (const Gate *gate : slot.gates) {
                if (gate->control.eval(b)) {
                    conjugate_by_gate(gate->kind, local_of(gate->q0), gate->targets().size() > 1 ? local_of(gate->q1) : 0,
                                      local);
                }
            }
            size_t self = local_of(uint32_t(g.params.at("qubit")));
            return g.params.at("comp") == kCompX ? local.x.get(self) : local.z.get(self);
        }
        if (g.kind == "dec") {
            BitVec x(in.size());
            for (size_t q = 0; q < in.size(); q++) {
                x.set(q, in[q]);
            }
            return dec(p.layout(), x);
        }
        throw std::invalid_argument("no evaluator for gate kind " + g.kind);
    };
}

BitVec decode_netlist_inputs(const BitVec &z_in, const BitVec &s, const BitVec &y) {
    BitVec out(z_in.size() + s.size() + y.size());
    out.assign_slice(0, z_in);
    out.assign_slice(z_in.size(), s);
    out.assign_slice(z_in.size() + s.size(), y);
    return out;
}

}  // namespace shallowsep
