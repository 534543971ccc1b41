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

#include "shallowsep/circuit.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace shallowsep {

const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::S_DAG:
            return "S_DAG";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::CZ:
            return "CZ";
        case GateKind::SWAP:
            return "SWAP";
    }
    return "?";
}

GateKind gate_from_name(const std::string &name) {
    for (GateKind k : {GateKind::H, GateKind::S, GateKind::S_DAG, GateKind::X, GateKind::Y, GateKind::Z,
                       GateKind::CNOT, GateKind::CZ, GateKind::SWAP}) {
        if (name == gate_name(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate name: " + name);
}

bool is_two_qubit(GateKind k) { return k == GateKind::CNOT || k == GateKind::CZ || k == GateKind::SWAP; }

bool Control::eval(const BitVec &inputs) const {
    for (const auto &[bit, val] : literals) {
        if (inputs.get(bit) != val) {
            return false;
        }
    }
    return true;
}

bool Control::exclusive_with(const Control &other) const {
    for (const auto &[b1, v1] : literals) {
        for (const auto &[b2, v2] : other.literals) {
            if (b1 == b2 && v1 != v2) {
                return true;
            }
        }
    }
    return false;
}

Control Control::operator&(const Control &other) const {
    Control r = *this;
    r.literals.insert(r.literals.end(), other.literals.begin(), other.literals.end());
    return r;
}

std::string Control::str() const {
    std::string s;
    for (const auto &[bit, val] : literals) {
        if (!s.empty()) {
            s += "&";
        }
        s += (val ? "" : "!") + std::to_string(bit);
    }
    return s;
}

std::vector<uint32_t> Gate::targets() const {
    if (is_two_qubit(kind)) {
        return {q0, q1};
    }
    return {q0};
}

size_t LayeredCliffordCircuit::new_layer() {
    layers_.emplace_back();
    return layers_.size() - 1;
}

void LayeredCliffordCircuit::add(GateKind k, uint32_t q0, Control c) {
    if (is_two_qubit(k)) {
        throw std::invalid_argument(std::string(gate_name(k)) + " needs two qubits");
    }
    add_gate(Gate{k, q0, 0, std::move(c)});
}

void LayeredCliffordCircuit::add(GateKind k, uint32_t q0, uint32_t q1, Control c) {
    if (!is_two_qubit(k)) {
        throw std::invalid_argument(std::string(gate_name(k)) + " acts on one qubit");
    }
    add_gate(Gate{k, q0, q1, std::move(c)});
}

void LayeredCliffordCircuit::add_gate(const Gate &g) {
    if (layers_.empty()) {
        new_layer();
    }
    for (uint32_t q : g.targets()) {
        if (q >= num_qubits_) {
            throw std::invalid_argument("gate target " + std::to_string(q) + " out of range");
        }
    }
    if (is_two_qubit(g.kind) && g.q0 == g.q1) {
        throw std::invalid_argument("two-qubit gate with repeated target");
    }
    for (const auto &[bit, val] : g.control.literals) {
        if (bit >= num_inputs_) {
            throw std::invalid_argument("control bit " + std::to_string(bit) + " out of range");
        }
    }
    layers_.back().push_back(g);
}

void LayeredCliffordCircuit::append(const LayeredCliffordCircuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("appending circuit on a different number of qubits");
    }
    num_inputs_ = std::max(num_inputs_, other.num_inputs_);
    for (const auto &layer : other.layers_) {
        layers_.push_back(layer);
    }
}

void LayeredCliffordCircuit::validate() const {
    if (!coords.empty() && coords.size() != num_qubits_) {
        throw std::invalid_argument("coordinate table size differs from the number of qubits");
    }
    std::vector<std::vector<const Gate *>> touching(num_qubits_);
    for (size_t t = 0; t < layers_.size(); t++) {
        for (auto &v : touching) {
            v.clear();
        }
        for (const Gate &g : layers_[t]) {
            for (uint32_t q : g.targets()) {
                if (q >= num_qubits_) {
                    throw std::invalid_argument("gate target out of range in layer " + std::to_string(t));
                }
                for (const Gate *h : touching[q]) {
                    if (!g.control.exclusive_with(h->control)) {
                        throw std::invalid_argument("layer " + std::to_string(t) + " has overlapping gates on qubit " +
                                                    std::to_string(q));
                    }
                }
                touching[q].push_back(&g);
            }
            for (const auto &[bit, val] : g.control.literals) {
                if (bit >= num_inputs_) {
                    throw std::invalid_argument("control bit out of range in layer " + std::to_string(t));
                }
            }
        }
    }
}

void LayeredCliffordCircuit::check_inputs(const BitVec &inputs) const {
    if (inputs.size() < num_inputs_) {
        throw std::invalid_argument("unresolved control bit: circuit has " + std::to_string(num_inputs_) +
                                    " inputs but " + std::to_string(inputs.size()) + " were given");
    }
}

std::vector<const Gate *> LayeredCliffordCircuit::active_gates(size_t t, const BitVec &inputs) const {
    check_inputs(inputs);
    std::vector<const Gate *> r;
    for (const Gate &g : layers_[t]) {
        if (g.control.eval(inputs)) {
            r.push_back(&g);
        }
    }
    return r;
}

size_t LayeredCliffordCircuit::active_depth(const BitVec &inputs) const {
    check_inputs(inputs);
    size_t c = 0;
    for (const auto &layer : layers_) {
        for (const Gate &g : layer) {
            if (g.control.eval(inputs)) {
                c++;
                break;
            }
        }
    }
    return c;
}

LayeredCliffordCircuit LayeredCliffordCircuit::resolved(const BitVec &inputs) const {
    check_inputs(inputs);
    LayeredCliffordCircuit r(num_qubits_, 0);
    r.coords = coords;
    for (const auto &layer : layers_) {
        std::vector<Gate> kept;
        for (const Gate &g : layer) {
            if (g.control.eval(inputs)) {
                kept.push_back(Gate{g.kind, g.q0, g.q1, {}});
            }
        }
        if (!kept.empty()) {
            r.layers_.push_back(std::move(kept));
        }
    }
    return r;
}

LayeredCliffordCircuit LayeredCliffordCircuit::compacted() const {
    LayeredCliffordCircuit r(num_qubits_, num_inputs_);
    r.coords = coords;
    r.input_names = input_names;
    std::vector<size_t> next_free(num_qubits_, 0);
    for (const auto &layer : layers_) {
        for (const Gate &g : layer) {
            if (!g.control.empty()) {
                throw std::invalid_argument("compaction requires an uncontrolled circuit");
            }
            size_t t = 0;
            for (uint32_t q : g.targets()) {
                t = std::max(t, next_free[q]);
            }
            while (r.layers_.size() <= t) {
                r.layers_.emplace_back();
            }
            r.layers_[t].push_back(g);
            for (uint32_t q : g.targets()) {
                next_free[q] = t + 1;
            }
        }
    }
    return r;
}

size_t LayeredCliffordCircuit::gate_count() const {
    size_t c = 0;
    for (const auto &layer : layers_) {
        c += layer.size();
    }
    return c;
}

void conjugate_by_gate(GateKind k, uint32_t a, uint32_t b, PauliOp &p) {
    auto flip_sign = [&]() { p.phase = (p.phase + 2) & 3; };
    bool xa = p.x.get(a);
    bool za = p.z.get(a);
    switch (k) {
        case GateKind::H:
            if (xa && za) {
                flip_sign();
            }
            p.x.set(a, za);
            p.z.set(a, xa);
            return;
        case GateKind::S:
            // X -> Y, Y -> -X.
            if (xa && za) {
                flip_sign();
            }
            p.z.set(a, za ^ xa);
            return;
        case GateKind::S_DAG:
            // X -> -Y, Y -> X.
            if (xa && !za) {
                flip_sign();
            }
            p.z.set(a, za ^ xa);
            return;
        case GateKind::X:
            if (za) {
                flip_sign();
            }
            return;
        case GateKind::Y:
            if (xa ^ za) {
                flip_sign();
            }
            return;
        case GateKind::Z:
            if (xa) {
                flip_sign();
            }
            return;
        default:
            break;
    }
    bool xb = p.x.get(b);
    bool zb = p.z.get(b);
    switch (k) {
        case GateKind::CNOT:
            if (xa && zb && (xb == za)) {
                flip_sign();
            }
            p.x.set(b, xb ^ xa);
            p.z.set(a, za ^ zb);
            return;
        case GateKind::CZ:
            if (xa && xb && (za ^ zb)) {
                flip_sign();
            }
            p.z.set(a, za ^ xb);
            p.z.set(b, zb ^ xa);
            return;
        case GateKind::SWAP:
            p.x.set(a, xb);
            p.z.set(a, zb);
            p.x.set(b, xa);
            p.z.set(b, za);
            return;
        default:
            break;
    }
}

void conjugate_by_layer(const LayeredCliffordCircuit &c, size_t t, const BitVec &inputs, PauliOp &p) {
    for (const Gate &g : c.layers()[t]) {
        if (g.control.eval(inputs)) {
            conjugate_by_gate(g.kind, g.q0, g.q1, p);
        }
    }
}

namespace {

GateKind inverse_kind(GateKind k) {
    if (k == GateKind::S) {
        return GateKind::S_DAG;
    }
    if (k == GateKind::S_DAG) {
        return GateKind::S;
    }
    return k;
}

}  // namespace

PauliOp conjugate_pauli(const LayeredCliffordCircuit &c, const BitVec &inputs, const PauliOp &p) {
    if (p.num_qubits() != c.num_qubits()) {
        throw std::invalid_argument("Pauli size differs from circuit size");
    }
    if (inputs.size() < c.num_inputs()) {
        throw std::invalid_argument("unresolved control bit");
    }
    PauliOp r = p;
    for (size_t t = 0; t < c.depth(); t++) {
        conjugate_by_layer(c, t, inputs, r);
    }
    return r;
}

PauliOp conjugate_pauli_inverse(const LayeredCliffordCircuit &c, const BitVec &inputs, const PauliOp &p) {
    if (p.num_qubits() != c.num_qubits()) {
        throw std::invalid_argument("Pauli size differs from circuit size");
    }
    if (inputs.size() < c.num_inputs()) {
        throw std::invalid_argument("unresolved control bit");
    }
    PauliOp r = p;
    for (size_t t = c.depth(); t-- > 0;) {
        const auto &layer = c.layers()[t];
        for (auto it = layer.rbegin(); it != layer.rend(); ++it) {
            if (it->control.eval(inputs)) {
                conjugate_by_gate(inverse_kind(it->kind), it->q0, it->q1, r);
            }
        }
    }
    return r;
}

int max_gate_diameter(const LayeredCliffordCircuit &c, const BitVec &inputs) {
    if (c.coords.size() != c.num_qubits()) {
        throw std::invalid_argument("circuit has no coordinate table");
    }
    int best = 0;
    for (size_t t = 0; t < c.depth(); t++) {
        for (const Gate *g : c.active_gates(t, inputs)) {
            if (!is_two_qubit(g->kind)) {
                continue;
            }
            const Coord &u = c.coords[g->q0];
            const Coord &v = c.coords[g->q1];
            int dist = std::abs(u[0] - v[0]) + std::abs(u[1] - v[1]) + std::abs(u[2] - v[2]);
            best = std::max(best, dist);
        }
    }
    return best;
}

}  // namespace shallowsep
