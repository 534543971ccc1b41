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

#include <gtest/gtest.h>

#include <random>

#include "test_util.h"

using namespace shallowsep;
using namespace shallowsep_test;

TEST(circuit, rejects_overlapping_gates) {
    LayeredCliffordCircuit c(3);
    c.new_layer();
    c.add(GateKind::CNOT, 0, 1);
    c.add(GateKind::H, 1);
    ASSERT_THROW(c.validate(), std::invalid_argument);
}

TEST(circuit, allows_overlap_between_exclusive_controls) {
    LayeredCliffordCircuit c(2, 1);
    c.new_layer();
    c.add(GateKind::H, 0, Control{{{0, true}}});
    c.add(GateKind::X, 0, Control{{{0, false}}});
    c.validate();
    LayeredCliffordCircuit bad(2, 2);
    bad.new_layer();
    bad.add(GateKind::H, 0, Control{{{0, true}}});
    bad.add(GateKind::X, 0, Control{{{1, false}}});
    ASSERT_THROW(bad.validate(), std::invalid_argument);
}

TEST(circuit, rejects_out_of_range) {
    LayeredCliffordCircuit c(2, 1);
    ASSERT_THROW(c.add(GateKind::H, 2), std::invalid_argument);
    ASSERT_THROW(c.add(GateKind::CNOT, 0, 0), std::invalid_argument);
    ASSERT_THROW(c.add(GateKind::H, 0, Control{{{3, true}}}), std::invalid_argument);
    c.add(GateKind::H, 0, Control{{{0, true}}});
    ASSERT_THROW(c.active_depth(BitVec()), std::invalid_argument);
}

TEST(circuit, single_gate_conjugation) {
    auto conj = [](GateKind k, const char *in) {
        PauliOp p = PauliOp::from_string(in);
        conjugate_by_gate(k, 0, 1, p);
        return p.str();
    };
    ASSERT_EQ(conj(GateKind::H, "XI"), "+Z_");
    ASSERT_EQ(conj(GateKind::H, "YI"), "-Y_");
    ASSERT_EQ(conj(GateKind::S, "XI"), "+Y_");
    ASSERT_EQ(conj(GateKind::S, "YI"), "-X_");
    ASSERT_EQ(conj(GateKind::S_DAG, "XI"), "-Y_");
    ASSERT_EQ(conj(GateKind::CNOT, "XI"), "+XX");
    ASSERT_EQ(conj(GateKind::CNOT, "IZ"), "+ZZ");
    ASSERT_EQ(conj(GateKind::CZ, "XI"), "+XZ");
    ASSERT_EQ(conj(GateKind::CZ, "XX"), "+YY");
    ASSERT_EQ(conj(GateKind::SWAP, "XZ"), "+ZX");
    ASSERT_EQ(conj(GateKind::Z, "XI"), "-X_");
}

TEST(circuit, conjugation_matches_state_vector) {
    // C P |phi> must equal (C P C^dagger) C |phi>.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 2 + rng() % 4;
        auto prep = random_circuit(n, 3, rng);
        auto c = random_circuit(n, 4, rng);
        PauliOp p = random_pauli(n, rng);
        StateVector a(n);
        a.apply_circuit(prep, BitVec());
        a.apply_pauli(p);
        a.apply_circuit(c, BitVec());
        StateVector b(n);
        b.apply_circuit(prep, BitVec());
        b.apply_circuit(c, BitVec());
        b.apply_pauli(conjugate_pauli(c, BitVec(), p));
        for (size_t i = 0; i < a.amplitudes().size(); i++) {
            ASSERT_NEAR(std::abs(a.amplitudes()[i] - b.amplitudes()[i]), 0, 1e-9);
        }
        ASSERT_EQ(conjugate_pauli_inverse(c, BitVec(), conjugate_pauli(c, BitVec(), p)), p);
    }
}

TEST(circuit, resolve_and_compact) {
    LayeredCliffordCircuit c(3, 1);
    c.new_layer();
    c.add(GateKind::H, 0);
    c.new_layer();
    c.add(GateKind::X, 1, Control{{{0, true}}});
    c.new_layer();
    c.add(GateKind::CNOT, 1, 2);
    BitVec off(1);
    BitVec on = BitVec::from_string("1");
    ASSERT_EQ(c.active_depth(off), 2);
    ASSERT_EQ(c.active_depth(on), 3);
    auto r = c.resolved(off);
    ASSERT_EQ(r.depth(), 2);
    ASSERT_EQ(r.compacted().depth(), 1);
    ASSERT_EQ(c.resolved(on).compacted().depth(), 2);
}

TEST(circuit, gate_diameter) {
    LayeredCliffordCircuit c(3);
    c.coords = {{0, 0, 0}, {1, 0, 0}, {3, 1, 0}};
    c.new_layer();
    c.add(GateKind::CZ, 0, 1);
    ASSERT_EQ(max_gate_diameter(c, BitVec()), 1);
    c.new_layer();
    c.add(GateKind::CZ, 0, 2);
    ASSERT_EQ(max_gate_diameter(c, BitVec()), 4);
}
