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

#include "shallowsep/classical_analysis.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace shallowsep {

namespace {

struct Arity {
    int lo;
    int hi;  // -1 for unbounded
};

const std::map<std::string, Arity> &builtin_kinds() {
    static const std::map<std::string, Arity> kinds = {
        {"buf", {1, 1}},  {"not", {1, 1}},  {"and", {1, -1}},  {"or", {1, -1}},    {"xor", {1, -1}},  {"nand", {1, -1}},
        {"nor", {1, -1}}, {"xnor", {1, -1}}, {"maj", {1, -1}}, {"const0", {0, 0}}, {"const1", {0, 0}},
    };
    return kinds;
}

bool eval_builtin(const std::string &kind, const std::vector<bool> &in) {
    size_t ones = size_t(std::count(in.begin(), in.end(), true));
    if (kind == "buf") return in[0];
    if (kind == "not") return !in[0];
    if (kind == "and") return ones == in.size();
    if (kind == "or") return ones > 0;
    if (kind == "xor") return ones % 2 == 1;
    if (kind == "nand") return ones != in.size();
    if (kind == "nor") return ones == 0;
    if (kind == "xnor") return ones % 2 == 0;
    if (kind == "maj") return 2 * ones > in.size();
    if (kind == "const0") return false;
    if (kind == "const1") return true;
    throw std::logic_error("not a built-in kind: " + kind);
}

/// Splits "alpha3.1" into ("alpha", 3). Returns j = 0 when the name does not have that form.
std::pair<std::string, int> split_label(const std::string &name) {
    std::string base = name.substr(0, name.find('.'));
    size_t p = base.size();
    while (p > 0 && std::isdigit(static_cast<unsigned char>(base[p - 1]))) {
        p--;
    }
    if (p == base.size() || p == 0) {
        return {base, 0};
    }
    return {base.substr(0, p), std::stoi(base.substr(p))};
}

}  // namespace

void BooleanDag::finalize() {
    pos_.clear();
    size_t ni = input_names.size();
    for (size_t i = 0; i < ni; i++) {
        pos_[int(i)] = i;
    }
    std::unordered_map<int, size_t> gate_of;
    for (size_t g = 0; g < gates.size(); g++) {
        int id = gates[g].output;
        if (id < int(ni) || gate_of.count(id)) {
            throw std::invalid_argument("gate output id " + std::to_string(id) + " is reserved or defined twice");
        }
        gate_of[id] = g;
        auto it = builtin_kinds().find(gates[g].kind);
        if (it != builtin_kinds().end()) {
            int k = int(gates[g].inputs.size());
            if (k < it->second.lo || (it->second.hi >= 0 && k > it->second.hi)) {
                throw std::invalid_argument("wrong number of inputs for gate kind " + gates[g].kind);
            }
        } else if (gates[g].kind.empty()) {
            throw std::invalid_argument("gate without kind");
        }
    }
    // Kahn's algorithm; ties keep the original order.
    std::vector<int> pending(gates.size(), 0);
    std::vector<std::vector<size_t>> users(gates.size());
    for (size_t g = 0; g < gates.size(); g++) {
        for (int in : gates[g].inputs) {
            if (in >= 0 && in < int(ni)) {
                continue;
            }
            auto it = gate_of.find(in);
            if (it == gate_of.end()) {
                throw std::invalid_argument("unknown node id " + std::to_string(in));
            }
            pending[g]++;
            users[it->second].push_back(g);
        }
    }
    std::set<size_t> ready;
    for (size_t g = 0; g < gates.size(); g++) {
        if (pending[g] == 0) {
            ready.insert(g);
        }
    }
    std::vector<DagGate> sorted;
    sorted.reserve(gates.size());
    while (!ready.empty()) {
        size_t g = *ready.begin();
        ready.erase(ready.begin());
        sorted.push_back(gates[g]);
        for (size_t u : users[g]) {
            if (--pending[u] == 0) {
                ready.insert(u);
            }
        }
    }
    if (sorted.size() != gates.size()) {
        throw std::invalid_argument("netlist has a cycle");
    }
    gates = std::move(sorted);
    for (size_t g = 0; g < gates.size(); g++) {
        pos_[gates[g].output] = ni + g;
    }
    for (int o : outputs) {
        if (!pos_.count(o)) {
            throw std::invalid_argument("unknown output node " + std::to_string(o));
        }
    }
    if (!output_names.empty() && output_names.size() != outputs.size()) {
        throw std::invalid_argument("output_names and outputs differ in length");
    }
    finalized_ = true;
}

void BooleanDag::require_finalized() const {
    if (!finalized_) {
        throw std::logic_error("BooleanDag used before finalize()");
    }
}

size_t BooleanDag::position(int id) const {
    require_finalized();
    auto it = pos_.find(id);
    if (it == pos_.end()) {
        throw std::invalid_argument("unknown node id " + std::to_string(id));
    }
    return it->second;
}

int BooleanDag::depth() const {
    require_finalized();
    std::vector<int> level(num_nodes(), 0);
    for (size_t g = 0; g < gates.size(); g++) {
        int best = 0;
        for (int in : gates[g].inputs) {
            best = std::max(best, level[position(in)]);
        }
        level[num_inputs() + g] = best + 1;
    }
    int out = 0;
    for (int o : outputs) {
        out = std::max(out, level[position(o)]);
    }
    return out;
}

int BooleanDag::max_fan_in() const {
    int k = 0;
    for (const auto &g : gates) {
        k = std::max(k, int(g.inputs.size()));
    }
    return k;
}

std::string BooleanDag::to_json() const {
    require_finalized();
    nlohmann::json gs = nlohmann::json::array();
    for (const auto &g : gates) {
        nlohmann::json o = {{"kind", g.kind}, {"inputs", g.inputs}, {"output", g.output}};
        if (!g.params.empty()) {
            o["params"] = g.params;
        }
        gs.push_back(std::move(o));
    }
    nlohmann::json o = {{"inputs", input_names}, {"gates", gs},          {"outputs", outputs},
                        {"depth", depth()},      {"max_fan_in", max_fan_in()}};
    if (!output_names.empty()) {
        o["output_names"] = output_names;
    }
    return o.dump();
}

BooleanDag BooleanDag::from_json(const std::string &text) {
    BooleanDag dag;
    nlohmann::json o;
    try {
        o = nlohmann::json::parse(text);
        dag.input_names = o.at("inputs").get<std::vector<std::string>>();
        for (const auto &g : o.at("gates")) {
            DagGate gate;
            gate.kind = g.at("kind").get<std::string>();
            gate.inputs = g.at("inputs").get<std::vector<int>>();
            gate.output = g.at("output").get<int>();
            if (g.contains("params")) {
                gate.params = g.at("params").get<std::map<std::string, int64_t>>();
            }
            dag.gates.push_back(std::move(gate));
        }
        dag.outputs = o.at("outputs").get<std::vector<int>>();
        if (o.contains("output_names")) {
            dag.output_names = o.at("output_names").get<std::vector<std::string>>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("bad netlist: ") + e.what());
    }
    dag.finalize();
    if (o.contains("depth") && o["depth"].get<int>() != dag.depth()) {
        throw std::invalid_argument("netlist depth field does not match its gates");
    }
    if (o.contains("max_fan_in") && o["max_fan_in"].get<int>() != dag.max_fan_in()) {
        throw std::invalid_argument("netlist max_fan_in field does not match its gates");
    }
    return dag;
}

std::vector<bool> BooleanDag::evaluate_nodes(const BitVec &inputs, const CustomEval &custom) const {
    require_finalized();
    if (inputs.size() != num_inputs()) {
        throw std::invalid_argument("input string has the wrong length");
    }
    std::vector<bool> val(num_nodes());
    for (size_t i = 0; i < num_inputs(); i++) {
        val[i] = inputs.get(i);
    }
    std::vector<bool> in;
    for (size_t g = 0; g < gates.size(); g++) {
        const DagGate &gate = gates[g];
        in.clear();
        for (int id : gate.inputs) {
            in.push_back(val[position(id)]);
        }
        if (builtin_kinds().count(gate.kind)) {
            val[num_inputs() + g] = eval_builtin(gate.kind, in);
        } else if (custom) {
            val[num_inputs() + g] = custom(gate, in);
        } else {
            throw std::invalid_argument("no evaluator for gate kind " + gate.kind);
        }
    }
    return val;
}

BitVec BooleanDag::evaluate(const BitVec &inputs, const CustomEval &custom) const {
    std::vector<bool> val = evaluate_nodes(inputs, custom);
    BitVec out(outputs.size());
    for (size_t o = 0; o < outputs.size(); o++) {
        out.set(o, val[position(outputs[o])]);
    }
    return out;
}

std::vector<BitVec> all_backward_lightcones(const BooleanDag &dag) {
    std::vector<BitVec> cone(dag.num_nodes(), BitVec(dag.num_inputs()));
    for (size_t i = 0; i < dag.num_inputs(); i++) {
        cone[i].set(i, true);
    }
    for (size_t g = 0; g < dag.gates.size(); g++) {
        BitVec &c = cone[dag.num_inputs() + g];
        for (int id : dag.gates[g].inputs) {
            c |= cone[dag.position(id)];
        }
    }
    std::vector<BitVec> out;
    for (int o : dag.outputs) {
        out.push_back(cone[dag.position(o)]);
    }
    return out;
}

BitVec backward_lightcone(const BooleanDag &dag, size_t output) {
    if (output >= dag.outputs.size()) {
        throw std::invalid_argument("unknown output");
    }
    return all_backward_lightcones(dag)[output];
}

BitVec forward_lightcone(const BooleanDag &dag, size_t input) {
    if (input >= dag.num_inputs()) {
        throw std::invalid_argument("unknown input");
    }
    // Forward reachability from one input, independent of the backward pass.
    std::vector<bool> hit(dag.num_nodes(), false);
    hit[input] = true;
    for (size_t g = 0; g < dag.gates.size(); g++) {
        for (int id : dag.gates[g].inputs) {
            if (hit[dag.position(id)]) {
                hit[dag.num_inputs() + g] = true;
                break;
            }
        }
    }
    BitVec out(dag.outputs.size());
    for (size_t o = 0; o < dag.outputs.size(); o++) {
        out.set(o, hit[dag.position(dag.outputs[o])]);
    }
    return out;
}

BitVec correlated_inputs(const BooleanDag &dag, size_t output, const BooleanDag::CustomEval &custom) {
    size_t ni = dag.num_inputs();
    if (ni > 12) {
        throw std::invalid_argument("exhaustive correlation needs at most 12 inputs");
    }
    if (output >= dag.outputs.size()) {
        throw std::invalid_argument("unknown output");
    }
    std::vector<bool> value(size_t{1} << ni);
    for (uint32_t a = 0; a < value.size(); a++) {
        BitVec in(ni);
        for (size_t i = 0; i < ni; i++) {
            in.set(i, (a >> i) & 1);
        }
        value[a] = dag.evaluate(in, custom).get(output);
    }
    BitVec out(ni);
    for (uint32_t a = 0; a < value.size(); a++) {
        for (size_t i = 0; i < ni; i++) {
            if (value[a] != value[a ^ (1u << i)]) {
                out.set(i, true);
            }
        }
    }
    return out;
}

MspLabels MspLabels::from_dag(const BooleanDag &dag) {
    MspLabels l;
    auto grow = [](std::vector<std::vector<size_t>> &v, int j) {
        if (int(v.size()) < j) {
            v.resize(j);
        }
    };
    for (size_t i = 0; i < dag.num_inputs(); i++) {
        auto [base, j] = split_label(dag.input_names[i]);
        if (j <= 0) {
            continue;
        }
        if (base == "alpha") {
            grow(l.alpha, j);
            l.alpha[j - 1].push_back(i);
        } else if (base == "beta") {
            grow(l.beta, j);
            l.beta[j - 1].push_back(i);
        }
    }
    for (size_t o = 0; o < dag.output_names.size(); o++) {
        auto [base, j] = split_label(dag.output_names[o]);
        if (j <= 0) {
            continue;
        }
        if (base == "x") {
            grow(l.x, j);
            l.x[j - 1].push_back(o);
        } else if (base == "y") {
            grow(l.y, j);
            l.y[j - 1].push_back(o);
        }
    }
    l.n = int(l.alpha.size());
    if (l.n == 0 || l.beta.size() != l.alpha.size() || l.x.size() != l.alpha.size() ||
        l.y.size() != l.alpha.size()) {
        throw std::invalid_argument("netlist is not labeled alpha<j>, beta<j>, x<j>, y<j> for j = 1..n");
    }
    for (int j = 0; j < l.n; j++) {
        if (l.alpha[j].empty() || l.beta[j].empty() || l.x[j].empty() || l.y[j].empty()) {
            throw std::invalid_argument("label group " + std::to_string(j + 1) + " is missing");
        }
    }
    return l;
}

namespace {

struct EcTables {
    MspLabels labels;
    std::vector<BitVec> fwd_alpha, fwd_beta;  // over outputs
    std::vector<BitVec> x_mask, y_mask;
};

EcTables ec_tables(const BooleanDag &dag) {
    EcTables t;
    t.labels = MspLabels::from_dag(dag);
    size_t no = dag.outputs.size();
    auto cones = all_backward_lightcones(dag);
    auto forward_of = [&](const std::vector<size_t> &ins) {
        BitVec f(no);
        for (size_t o = 0; o < no; o++) {
            for (size_t i : ins) {
                if (cones[o].get(i)) {
                    f.set(o, true);
                    break;
                }
            }
        }
        return f;
    };
    for (int j = 0; j < t.labels.n; j++) {
        t.fwd_alpha.push_back(forward_of(t.labels.alpha[j]));
        t.fwd_beta.push_back(forward_of(t.labels.beta[j]));
        t.x_mask.push_back(BitVec::from_indices(no, t.labels.x[j]));
        t.y_mask.push_back(BitVec::from_indices(no, t.labels.y[j]));
    }
    return t;
}

bool ec_holds(const EcTables &t, int j, int k) {
    return (t.fwd_alpha[j - 1] & t.fwd_beta[k - 1]).none() && (t.y_mask[k - 1] & t.fwd_alpha[j - 1]).none() &&
           (t.x_mask[j - 1] & t.fwd_beta[k - 1]).none();
}

}  // namespace

bool check_event_ec(const BooleanDag &dag, int j, int k) {
    EcTables t = ec_tables(dag);
    if (j < 1 || k > t.labels.n || j >= k) {
        throw std::invalid_argument("need 1 <= j < k <= n");
    }
    return ec_holds(t, j, k);
}

double event_ec_probability(const BooleanDag &dag) {
    EcTables t = ec_tables(dag);
    int n = t.labels.n;
    if (n < 2) {
        throw std::invalid_argument("need n >= 2");
    }
    uint64_t good = 0, total = 0;
    for (int j = 1; j <= n; j++) {
        for (int k = j + 1; k <= n; k++) {
            good += ec_holds(t, j, k);
            total++;
        }
    }
    return double(good) / double(total);
}

double event_ec_bound(int n, int fan_in, int depth) {
    double k2d = 1;
    for (int i = 0; i < 2 * depth; i++) {
        k2d *= fan_in;
    }
    return 1.0 - 80.0 * k2d / n;
}

namespace {

BooleanDag random_layers(std::vector<std::string> inputs, size_t width, int depth, int fan_in,
                         std::mt19937_64 &rng) {
    if (depth < 1 || fan_in < 1 || width < 1) {
        throw std::invalid_argument("depth, width and fan-in must be positive");
    }
    static const char *kinds[] = {"xor", "and", "or"};
    BooleanDag dag;
    dag.input_names = std::move(inputs);
    std::vector<int> prev(dag.input_names.size());
    for (size_t i = 0; i < prev.size(); i++) {
        prev[i] = int(i);
    }
    if (size_t(fan_in) > prev.size() || size_t(fan_in) > width) {
        throw std::invalid_argument("fan-in exceeds the layer width");
    }
    int next_id = int(prev.size());
    for (int layer = 0; layer < depth; layer++) {
        std::vector<int> cur;
        for (size_t g = 0; g < width; g++) {
            DagGate gate;
            gate.kind = kinds[rng() % 3];
            std::vector<int> pool = prev;
            for (int f = 0; f < fan_in; f++) {
                size_t pick = f + rng() % (pool.size() - f);
                std::swap(pool[f], pool[pick]);
                gate.inputs.push_back(pool[f]);
            }
            gate.output = next_id++;
            cur.push_back(gate.output);
            dag.gates.push_back(std::move(gate));
        }
        prev = std::move(cur);
    }
    dag.outputs = prev;
    dag.finalize();
    return dag;
}

}  // namespace

BooleanDag random_layered_dag(size_t num_inputs, size_t width, int depth, int fan_in, std::mt19937_64 &rng) {
    std::vector<std::string> names;
    for (size_t i = 0; i < num_inputs; i++) {
        names.push_back("in" + std::to_string(i));
    }
    return random_layers(std::move(names), width, depth, fan_in, rng);
}

BooleanDag random_msp_dag(int n, int depth, int fan_in, std::mt19937_64 &rng) {
    std::vector<std::string> names;
    for (const char *base : {"alpha", "beta"}) {
        for (int j = 1; j <= n; j++) {
            names.push_back(std::string(base) + std::to_string(j) + ".1");
            names.push_back(std::string(base) + std::to_string(j) + ".2");
        }
    }
    BooleanDag dag = random_layers(std::move(names), size_t(4 * n), depth, fan_in, rng);
    for (const char *base : {"x", "y"}) {
        for (int j = 1; j <= n; j++) {
            dag.output_names.push_back(std::string(base) + std::to_string(j) + ".1");
            dag.output_names.push_back(std::string(base) + std::to_string(j) + ".2");
        }
    }
    return dag;
}

BooleanDag xor_tree(int depth) {
    if (depth < 0 || depth > 20) {
        throw std::invalid_argument("tree depth out of range");
    }
    BooleanDag dag;
    size_t leaves = size_t{1} << depth;
    std::vector<int> level;
    for (size_t i = 0; i < leaves; i++) {
        dag.input_names.push_back("in" + std::to_string(i));
        level.push_back(int(i));
    }
    int next_id = int(leaves);
    while (level.size() > 1) {
        std::vector<int> up;
        for (size_t i = 0; i < level.size(); i += 2) {
            dag.gates.push_back(DagGate{"xor", {level[i], level[i + 1]}, next_id, {}});
            up.push_back(next_id++);
        }
        level = std::move(up);
    }
    dag.outputs = level;
    dag.finalize();
    return dag;
}

}  // namespace shallowsep
