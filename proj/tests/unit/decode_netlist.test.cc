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

#include <gtest/gtest.h>

#include "shallowsep/magic_square.h"
#include "shallowsep/rng.h"

using namespace shallowsep;

TEST(DecodeNetlist, depth_and_fan_in) {
    for (auto [n, d] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
        FtPipeline p(n, d);
        DecodeNetlist net = build_decode_netlist(p);
        EXPECT_EQ(net.logical_depth, int(p.logical_circuit().depth()));
        EXPECT_EQ(net.dag.depth(), net.logical_depth + 3);
        EXPECT_EQ(net.gate_qubits, 2);
        EXPECT_EQ(net.m, int(p.block_size()));
        EXPECT_EQ(net.m_anc, int(p.lattice().region_a.size()));
        EXPECT_LE(net.dag.max_fan_in(), net.fan_in_bound());
        EXPECT_EQ(net.dag.num_inputs(), net.num_b + net.num_s + net.num_y);
        EXPECT_EQ(net.dag.outputs.size(), size_t(4 * n));
        std::map<std::string, int> widest;
        for (const auto &g : net.dag.gates) {
            widest[g.kind] = std::max(widest[g.kind], int(g.inputs.size()));
        }
        EXPECT_EQ(widest["rec"], net.m_anc);
        EXPECT_EQ(widest["dec"], net.m);
        EXPECT_EQ(widest["xor"], 2);
        EXPECT_LE(widest["prop"], net.control_bits + 2 * net.gate_qubits);
    }
}

TEST(DecodeNetlist, output_labels_follow_z_out) {
    FtPipeline p(2, 2);
    DecodeNetlist net = build_decode_netlist(p);
    MspLabels labels = MspLabels::from_dag([&] {
        BooleanDag renamed = net.dag;
        // Give the b inputs the alpha/beta names of z_in so that the labels parse.
        for (int j = 1; j <= 2; j++) {
            for (int b = 1; b <= 2; b++) {
                renamed.input_names[alpha_bit(j, b)] = "alpha" + std::to_string(j) + "." + std::to_string(b);
                renamed.input_names[beta_bit(2, j, b)] = "beta" + std::to_string(j) + "." + std::to_string(b);
            }
        }
        return renamed;
    }());
    EXPECT_EQ(labels.n, 2);
    EXPECT_EQ(labels.x[0], (std::vector<size_t>{size_t(alpha_bit(1, 1)), size_t(alpha_bit(1, 2))}));
    EXPECT_EQ(labels.y[1], (std::vector<size_t>{size_t(beta_bit(2, 2, 1)), size_t(beta_bit(2, 2, 2))}));
}

TEST(DecodeNetlist, evaluates_like_pipeline_decode) {
    for (auto [n, d] : {std::pair{2, 2}, std::pair{2, 3}}) {
        FtPipeline p(n, d);
        DecodeNetlist net = build_decode_netlist(p);
        auto ev = decode_netlist_evaluator(p);
        NoiseSpec spec = noise_at_locations(NoiseModel::IidDepolarizing, 0.02, {"in", "layer", "out"});
        for (uint64_t i = 0; i < 300; i++) {
            auto rng = trial_rng(21, i);
            BitVec z_in = random_bits(size_t(4 * n), rng);
            FtTrialResult r = p.run_trial(z_in, spec, rng);
            ASSERT_EQ(net.dag.evaluate(decode_netlist_inputs(z_in, r.s, r.y), ev), r.z) << "trial " << i;
        }
        // Arbitrary strings outside the support of any trial decode identically too.
        std::mt19937_64 rng(4);
        for (int i = 0; i < 50; i++) {
            BitVec z_in = random_bits(net.num_b, rng);
            BitVec s = random_bits(net.num_s, rng);
            BitVec y = random_bits(net.num_y, rng);
            ASSERT_EQ(net.dag.evaluate(decode_netlist_inputs(z_in, s, y), ev), p.decode(z_in, s, y));
        }
    }
}

TEST(DecodeNetlist, json_roundtrip_keeps_evaluation) {
    FtPipeline p(2, 2);
    DecodeNetlist net = build_decode_netlist(p);
    BooleanDag back = BooleanDag::from_json(net.dag.to_json());
    EXPECT_EQ(back.depth(), net.dag.depth());
    auto ev = decode_netlist_evaluator(p);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; i++) {
        BitVec in = random_bits(back.num_inputs(), rng);
        EXPECT_EQ(back.evaluate(in, ev), net.dag.evaluate(in, ev));
    }
    EXPECT_THROW(back.evaluate(BitVec(back.num_inputs())), std::invalid_argument);
}
