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

#include <gtest/gtest.h>

#include <bit>

using namespace shallowsep;

namespace {

BooleanDag wire() {
    BooleanDag dag;
    dag.input_names = {"a"};
    dag.outputs = {0};
    dag.finalize();
    return dag;
}

BitVec bits_of(size_t n, uint64_t v) {
    BitVec b(n);
    for (size_t i = 0; i < n; i++) {
        b.set(i, (v >> i) & 1);
    }
    return b;
}

/// Inputs alpha<j>, beta<j> for j = 1..n, with no gates or outputs yet.
BooleanDag msp_shell(int n) {
    BooleanDag dag;
    for (const char *base : {"alpha", "beta"}) {
        for (int j = 1; j <= n; j++) {
            dag.input_names.push_back(std::string(base) + std::to_string(j));
        }
    }
    return dag;
}

}  // namespace

TEST(BooleanDag, depth_zero_wire) {
    BooleanDag dag = wire();
    EXPECT_EQ(dag.depth(), 0);
    EXPECT_EQ(dag.max_fan_in(), 0);
    EXPECT_EQ(backward_lightcone(dag, 0).ones(), std::vector<size_t>{0});
    EXPECT_EQ(dag.evaluate(bits_of(1, 1)).get(0), true);
    EXPECT_EQ(dag.evaluate(bits_of(1, 0)).get(0), false);
}

TEST(BooleanDag, builtin_gates) {
    BooleanDag dag;
    dag.input_names = {"a", "b", "c"};
    const std::vector<std::string> kinds = {"and", "or", "xor", "nand", "nor", "xnor", "maj"};
    int id = 3;
    for (const auto &k : kinds) {
        dag.gates.push_back(DagGate{k, {0, 1, 2}, id, {}});
        dag.outputs.push_back(id++);
    }
    dag.gates.push_back(DagGate{"not", {0}, id, {}});
    dag.outputs.push_back(id++);
    dag.gates.push_back(DagGate{"const1", {}, id, {}});
    dag.outputs.push_back(id++);
    dag.finalize();
    for (uint64_t v = 0; v < 8; v++) {
        int ones = std::popcount(v);
        BitVec out = dag.evaluate(bits_of(3, v));
        EXPECT_EQ(out.get(0), ones == 3);
        EXPECT_EQ(out.get(1), ones > 0);
        EXPECT_EQ(out.get(2), ones % 2 == 1);
        EXPECT_EQ(out.get(3), ones != 3);
        EXPECT_EQ(out.get(4), ones == 0);
        EXPECT_EQ(out.get(5), ones % 2 == 0);
        EXPECT_EQ(out.get(6), ones >= 2);
        EXPECT_EQ(out.get(7), !(v & 1));
        EXPECT_TRUE(out.get(8));
    }
}

TEST(BooleanDag, gates_are_sorted_topologically) {
    BooleanDag dag;
    dag.input_names = {"a", "b"};
    dag.gates = {{"not", {5}, 6, {}}, {"and", {0, 1}, 5, {}}};
    dag.outputs = {6};
    dag.finalize();
    EXPECT_EQ(dag.gates[0].output, 5);
    EXPECT_EQ(dag.depth(), 2);
    EXPECT_TRUE(dag.evaluate(bits_of(2, 1)).get(0));
    EXPECT_FALSE(dag.evaluate(bits_of(2, 3)).get(0));
}

TEST(BooleanDag, malformed_netlists_throw) {
    auto bad = [](BooleanDag dag) { EXPECT_THROW(dag.finalize(), std::invalid_argument); };
    BooleanDag cyc;
    cyc.input_names = {"a"};
    cyc.gates = {{"and", {0, 2}, 1, {}}, {"and", {1}, 2, {}}};
    cyc.outputs = {2};
    bad(cyc);
    BooleanDag unknown = wire();
    unknown.gates = {{"xor", {0, 7}, 1, {}}};
    bad(unknown);
    BooleanDag reused = wire();
    reused.gates = {{"not", {0}, 0, {}}};
    bad(reused);
    BooleanDag arity = wire();
    arity.gates = {{"not", {0, 0}, 1, {}}};
    bad(arity);
    BooleanDag out = wire();
    out.outputs = {4};
    bad(out);
    BooleanDag custom = wire();
    custom.gates = {{"mystery", {0}, 1, {}}};
    custom.outputs = {1};
    custom.finalize();
    EXPECT_THROW(custom.evaluate(bits_of(1, 0)), std::invalid_argument);
    auto ev = [](const DagGate &, const std::vector<bool> &in) { return !in[0]; };
    EXPECT_TRUE(custom.evaluate(bits_of(1, 0), ev).get(0));
    BooleanDag unfinal;
    unfinal.input_names = {"a"};
    EXPECT_THROW(unfinal.depth(), std::logic_error);
}

TEST(Lightcone, xor_tree_cone_is_all_leaves_and_all_correlated) {
    for (int depth = 0; depth <= 3; depth++) {
        BooleanDag dag = xor_tree(depth);
        EXPECT_EQ(dag.depth(), depth);
        BitVec cone = backward_lightcone(dag, 0);
        EXPECT_EQ(cone.popcount(), size_t{1} << depth);
        EXPECT_EQ(correlated_inputs(dag, 0), cone);
    }
    EXPECT_EQ(backward_lightcone(xor_tree(8), 0).popcount(), 256u);
}

TEST(Lightcone, random_dag_cones_bounded_by_fan_in_power) {
    std::mt19937_64 rng(11);
    const int depth = 5, fan_in = 3;
    BooleanDag dag = random_layered_dag(400, 400, depth, fan_in, rng);
    EXPECT_EQ(dag.depth(), depth);
    EXPECT_EQ(dag.max_fan_in(), fan_in);
    size_t bound = 243;  // 3^5
    size_t biggest = 0;
    for (const BitVec &c : all_backward_lightcones(dag)) {
        EXPECT_LE(c.popcount(), bound);
        biggest = std::max(biggest, c.popcount());
    }
    EXPECT_GT(biggest, 50u);
}

TEST(Lightcone, forward_and_backward_are_dual) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; trial++) {
        size_t ni = 4 + rng() % 20;
        int depth = 1 + int(rng() % 4);
        int fan_in = 1 + int(rng() % 3);
        BooleanDag dag = random_layered_dag(ni, ni, depth, fan_in, rng);
        auto back = all_backward_lightcones(dag);
        for (size_t i = 0; i < ni; i++) {
            BitVec fwd = forward_lightcone(dag, i);
            for (size_t o = 0; o < dag.outputs.size(); o++) {
                ASSERT_EQ(fwd.get(o), back[o].get(i));
            }
        }
    }
}

TEST(Lightcone, reachability_contains_correlation) {
    std::mt19937_64 rng(8);
    size_t strict = 0;
    for (int trial = 0; trial < 60; trial++) {
        size_t ni = 3 + rng() % 10;
        BooleanDag dag = random_layered_dag(ni, ni, 1 + int(rng() % 3), 2, rng);
        for (size_t o = 0; o < dag.outputs.size(); o++) {
            BitVec cone = backward_lightcone(dag, o);
            BitVec cor = correlated_inputs(dag, o);
            ASSERT_EQ((cor & cone), cor);
            strict += cor != cone;
        }
    }
    // and/or gates mask inputs often enough that some cones are strictly larger.
    EXPECT_GT(strict, 0u);
    BooleanDag big = random_layered_dag(13, 13, 1, 1, rng);
    EXPECT_THROW(correlated_inputs(big, 0), std::invalid_argument);
}

TEST(Lightcone, masked_input_is_reachable_but_uncorrelated) {
    BooleanDag dag;
    dag.input_names = {"a", "b"};
    dag.gates = {{"xor", {0, 1}, 2, {}}, {"xor", {2, 1}, 3, {}}};
    dag.outputs = {3};
    dag.finalize();
    EXPECT_EQ(backward_lightcone(dag, 0).popcount(), 2u);
    EXPECT_EQ(correlated_inputs(dag, 0).ones(), std::vector<size_t>{0});
}

TEST(EventEc, all_to_all_fails_and_wires_hold) {
    const int n = 4;
    BooleanDag all = msp_shell(n);
    std::vector<int> every(2 * n);
    for (int i = 0; i < 2 * n; i++) {
        every[i] = i;
    }
    int id = 2 * n;
    for (const char *base : {"x", "y"}) {
        for (int j = 1; j <= n; j++) {
            all.gates.push_back({"xor", every, id, {}});
            all.outputs.push_back(id++);
            all.output_names.push_back(std::string(base) + std::to_string(j));
        }
    }
    all.finalize();
    EXPECT_FALSE(check_event_ec(all, 1, 2));
    EXPECT_DOUBLE_EQ(event_ec_probability(all), 0.0);

    BooleanDag wires = msp_shell(n);
    for (int j = 1; j <= n; j++) {
        wires.outputs.push_back(j - 1);  // x_j = alpha_j
        wires.output_names.push_back("x" + std::to_string(j));
    }
    for (int j = 1; j <= n; j++) {
        wires.outputs.push_back(n + j - 1);  // y_j = beta_j
        wires.output_names.push_back("y" + std::to_string(j));
    }
    wires.finalize();
    EXPECT_EQ(wires.depth(), 0);
    EXPECT_DOUBLE_EQ(event_ec_probability(wires), 1.0);

    // y_k reading alpha_j breaks the event for (j, k) = (1, 3) only.
    wires.gates.push_back({"xor", {0, n + 2}, 100, {}});
    wires.outputs[n + 2] = 100;
    wires.finalize();
    EXPECT_FALSE(check_event_ec(wires, 1, 3));
    EXPECT_TRUE(check_event_ec(wires, 1, 2));
    EXPECT_TRUE(check_event_ec(wires, 2, 3));
    EXPECT_DOUBLE_EQ(event_ec_probability(wires), 5.0 / 6.0);
    EXPECT_THROW(check_event_ec(wires, 3, 2), std::invalid_argument);
}

TEST(EventEc, labels_are_required) {
    BooleanDag dag = xor_tree(2);
    EXPECT_THROW(event_ec_probability(dag), std::invalid_argument);
}

TEST(EventEc, random_shallow_msp_circuit_beats_bound) {
    std::mt19937_64 rng(3);
    const int n = 400, fan_in = 2, depth = 1;
    BooleanDag dag = random_msp_dag(n, depth, fan_in, rng);
    MspLabels labels = MspLabels::from_dag(dag);
    EXPECT_EQ(labels.n, n);
    EXPECT_EQ(labels.alpha[0].size(), 2u);
    double bound = event_ec_bound(n, fan_in, depth);
    EXPECT_NEAR(bound, 1 - 80.0 * 4 / 400, 1e-12);
    EXPECT_GE(event_ec_probability(dag), bound);
}

TEST(BooleanDag, json_roundtrip) {
    std::mt19937_64 rng(2);
    BooleanDag dag = random_msp_dag(3, 2, 2, rng);
    dag.gates[0].params = {{"cube", 4}, {"comp", 1}};
    std::string text = dag.to_json();
    BooleanDag back = BooleanDag::from_json(text);
    EXPECT_EQ(back.to_json(), text);
    EXPECT_EQ(back.gates[0].params.at("cube"), 4);
    for (uint64_t v = 0; v < 64; v++) {
        BitVec in = bits_of(12, v * 61 % 4096);
        EXPECT_EQ(back.evaluate(in), dag.evaluate(in));
    }
}

TEST(BooleanDag, json_errors) {
    EXPECT_THROW(BooleanDag::from_json("{"), std::invalid_argument);
    EXPECT_THROW(BooleanDag::from_json(R"({"inputs": ["a"]})"), std::invalid_argument);
    EXPECT_THROW(BooleanDag::from_json(R"({"inputs": ["a"], "gates": [], "outputs": [0], "depth": 3})"),
                 std::invalid_argument);
    EXPECT_THROW(BooleanDag::from_json(R"({"inputs": ["a"], "gates": [], "outputs": [0], "max_fan_in": 2})"),
                 std::invalid_argument);
    EXPECT_NO_THROW(BooleanDag::from_json(R"({"inputs": ["a"], "gates": [], "outputs": [0], "depth": 0})"));
}
