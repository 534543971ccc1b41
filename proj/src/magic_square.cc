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

#include "shallowsep/magic_square.h"

#include <array>
#include <atomic>
#include <sstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "shallowsep/rng.h"
#include "shallowsep/tableau.h"

namespace shallowsep {

GameInput GameInput::parse(const std::string &bits) {
    if (bits == "00") {
        return GameInput{0};
    }
    if (bits == "01") {
        return GameInput{1};
    }
    if (bits == "10") {
        return GameInput{2};
    }
    if (bits == "11") {
        return GameInput{3};
    }
    throw std::invalid_argument("game input must be one of 00, 01, 10, 11: " + bits);
}

std::string GameInput::str() const {
    std::string s = "00";
    s[0] = first() ? '1' : '0';
    s[1] = second() ? '1' : '0';
    return s;
}

namespace {

void require_playable(GameInput g) {
    if (g.value < 1 || g.value > 3) {
        throw std::invalid_argument("game input 00 is not a valid question");
    }
}

int sgn(bool bit) { return bit ? -1 : 1; }

/// (x^1, x^2, x^3) with x^3 = -x^1 x^2.
std::array<int, 3> alice_signs(GameOutput x) {
    int a = sgn(x.b1);
    int b = sgn(x.b2);
    return {a, b, -a * b};
}

/// (y^1, y^2, y^3) with y^3 = y^1 y^2.
std::array<int, 3> bob_signs(GameOutput y) {
    int a = sgn(y.b1);
    int b = sgn(y.b2);
    return {a, b, a * b};
}

}  // namespace

int f_value(GameInput alpha, GameInput beta, const GameParams &p) {
    require_playable(alpha);
    require_playable(beta);
    // Rows are beta, columns alpha.
    const int table[3][3] = {
        {p.s, p.sp, p.s * p.sp},
        {p.tp, p.t, p.t * p.tp},
        {p.s * p.tp, p.sp * p.t, p.s * p.sp * p.t * p.tp},
    };
    return table[beta.value - 1][alpha.value - 1];
}

bool check_generalized_win(GameInput alpha, GameInput beta, GameOutput x, GameOutput y, const GameParams &params) {
    auto xs = alice_signs(x);
    auto ys = bob_signs(y);
    return xs[beta.value - 1] * ys[alpha.value - 1] == f_value(alpha, beta, params);
}

namespace {

Fraction reduced(int64_t num, int64_t den) {
    int64_t g = std::gcd(num, den);
    if (g == 0) {
        return {0, 1};
    }
    return {num / g, den / g};
}

}  // namespace

Fraction classical_game_value(const GameParams &params) {
    // Alice: one of 4 outputs per question, 4^3 = 64 strategies; same for Bob.
    int best = 0;
    for (int a = 0; a < 64; a++) {
        for (int b = 0; b < 64; b++) {
            int wins = 0;
            for (int al = 1; al <= 3; al++) {
                int xa = (a >> (2 * (al - 1))) & 3;
                GameOutput x{bool(xa & 2), bool(xa & 1)};
                for (int be = 1; be <= 3; be++) {
                    int yb = (b >> (2 * (be - 1))) & 3;
                    GameOutput y{bool(yb & 2), bool(yb & 1)};
                    wins += check_generalized_win(GameInput{uint8_t(al)}, GameInput{uint8_t(be)}, x, y, params);
                }
            }
            best = std::max(best, wins);
        }
    }
    return reduced(best, 9);
}

Fraction classical_game_value_single(GameInput alpha, GameInput beta, const GameParams &params) {
    int best = 0;
    for (int xa = 0; xa < 4; xa++) {
        for (int yb = 0; yb < 4; yb++) {
            GameOutput x{bool(xa & 2), bool(xa & 1)};
            GameOutput y{bool(yb & 2), bool(yb & 1)};
            best = std::max(best, int(check_generalized_win(alpha, beta, x, y, params)));
        }
    }
    return reduced(best, 1);
}

BitVec MSPInstance::z_in() const {
    if (n < 2 || j < 1 || k <= j || k > n) {
        throw std::invalid_argument("instance needs 1 <= j < k <= n and n >= 2");
    }
    require_playable(alpha);
    require_playable(beta);
    BitVec z(4 * n);
    z.set(alpha_bit(j, 1), alpha.first());
    z.set(alpha_bit(j, 2), alpha.second());
    z.set(beta_bit(n, k, 1), beta.first());
    z.set(beta_bit(n, k, 2), beta.second());
    return z;
}

std::string MSPInstance::to_json() const {
    nlohmann::json j_obj = {{"n", n}, {"j", j}, {"k", k}, {"alpha", alpha.str()}, {"beta", beta.str()}};
    return j_obj.dump();
}

MSPInstance MSPInstance::from_json(const std::string &text) {
    auto o = nlohmann::json::parse(text);
    MSPInstance inst;
    inst.n = o.at("n").get<int>();
    inst.j = o.at("j").get<int>();
    inst.k = o.at("k").get<int>();
    inst.alpha = GameInput::parse(o.at("alpha").get<std::string>());
    inst.beta = GameInput::parse(o.at("beta").get<std::string>());
    inst.z_in();
    return inst;
}

uint64_t instance_count(int n) { return n < 2 ? 0 : uint64_t(9) * n * (n - 1) / 2; }

MSPInstance instance_at(int n, uint64_t index) {
    if (index >= instance_count(n)) {
        throw std::out_of_range("instance index out of range");
    }
    MSPInstance inst;
    inst.n = n;
    uint64_t pair = index / 9;
    int ab = int(index % 9);
    inst.alpha = GameInput{uint8_t(1 + ab / 3)};
    inst.beta = GameInput{uint8_t(1 + ab % 3)};
    // Pairs (j, k) in lexicographic order.
    int j = 1;
    while (pair >= uint64_t(n - j)) {
        pair -= n - j;
        j++;
    }
    inst.j = j;
    inst.k = j + 1 + int(pair);
    return inst;
}

MSPInstance random_instance(int n, std::mt19937_64 &rng) {
    uint64_t count = instance_count(n);
    if (count == 0) {
        throw std::invalid_argument("instances need n >= 2");
    }
    return instance_at(n, rng() % count);
}

BitVec qubits_to_output(int n, const BitVec &qb) {
    if (qb.size() != size_t(4 * n)) {
        throw std::invalid_argument("qubit string has wrong length");
    }
    BitVec z(4 * n);
    for (int j = 1; j <= n; j++) {
        z.set(alpha_bit(j, 1), qb.get(p_qubit(2 * j - 1)));
        z.set(alpha_bit(j, 2), qb.get(q_qubit(2 * j - 1)));
        z.set(beta_bit(n, j, 1), qb.get(p_qubit(2 * j)));
        z.set(beta_bit(n, j, 2), qb.get(q_qubit(2 * j)));
    }
    return z;
}

BitVec output_to_qubits(int n, const BitVec &z) {
    if (z.size() != size_t(4 * n)) {
        throw std::invalid_argument("output string has wrong length");
    }
    BitVec qb(4 * n);
    for (int j = 1; j <= n; j++) {
        qb.set(p_qubit(2 * j - 1), z.get(alpha_bit(j, 1)));
        qb.set(q_qubit(2 * j - 1), z.get(alpha_bit(j, 2)));
        qb.set(p_qubit(2 * j), z.get(beta_bit(n, j, 1)));
        qb.set(q_qubit(2 * j), z.get(beta_bit(n, j, 2)));
    }
    return qb;
}

namespace {

Control input_equals(uint32_t bit1, uint32_t bit2, uint8_t value) {
    return Control{{{bit1, bool(value & 2)}, {bit2, bool(value & 1)}}};
}

}  // namespace

LayeredCliffordCircuit build_msp_controlled_circuit(int n) {
    if (n < 1) {
        throw std::invalid_argument("need n >= 1");
    }
    LayeredCliffordCircuit c(4 * n, 4 * n);
    for (int j = 1; j <= n; j++) {
        c.input_names.push_back("alpha" + std::to_string(j) + ".1");
        c.input_names.push_back("alpha" + std::to_string(j) + ".2");
    }
    for (int j = 1; j <= n; j++) {
        c.input_names.push_back("beta" + std::to_string(j) + ".1");
        c.input_names.push_back("beta" + std::to_string(j) + ".2");
    }
    auto alpha_is = [&](int j, uint8_t v) { return input_equals(alpha_bit(j, 1), alpha_bit(j, 2), v); };
    auto beta_is = [&](int j, uint8_t v) { return input_equals(beta_bit(n, j, 1), beta_bit(n, j, 2), v); };

    c.new_layer();
    for (int i = 1; i <= n; i++) {
        c.add(GateKind::H, p_qubit(2 * i - 1));
        c.add(GateKind::H, q_qubit(2 * i - 1));
    }
    c.new_layer();
    for (int i = 1; i <= n; i++) {
        c.add(GateKind::CNOT, p_qubit(2 * i - 1), p_qubit(2 * i));
        c.add(GateKind::CNOT, q_qubit(2 * i - 1), q_qubit(2 * i));
    }
    // U(01) = H_1, U(10) = H_1 SWAP, U(11) = H_1 CNOT, V(01) = H_1 H_2, V(10) = SWAP,
    // V(11) = H_1 H_2 CZ Z_1 Z_2, spread over three layers.
    c.new_layer();
    for (int i = 1; i <= n; i++) {
        uint32_t a1 = p_qubit(2 * i - 1), a2 = q_qubit(2 * i - 1);
        uint32_t b1 = p_qubit(2 * i), b2 = q_qubit(2 * i);
        c.add(GateKind::SWAP, a1, a2, alpha_is(i, 2));
        c.add(GateKind::CNOT, a1, a2, alpha_is(i, 3));
        c.add(GateKind::Z, b1, beta_is(i, 3));
        c.add(GateKind::Z, b2, beta_is(i, 3));
    }
    c.new_layer();
    for (int i = 1; i <= n; i++) {
        c.add(GateKind::CZ, p_qubit(2 * i), q_qubit(2 * i), beta_is(i, 3));
    }
    c.new_layer();
    for (int i = 1; i <= n; i++) {
        uint32_t a1 = p_qubit(2 * i - 1);
        uint32_t b1 = p_qubit(2 * i), b2 = q_qubit(2 * i);
        for (uint8_t v = 1; v <= 3; v++) {
            c.add(GateKind::H, a1, alpha_is(i, v));
        }
        c.add(GateKind::H, b1, beta_is(i, 1));
        c.add(GateKind::H, b2, beta_is(i, 1));
        c.add(GateKind::SWAP, b1, b2, beta_is(i, 2));
        c.add(GateKind::H, b1, beta_is(i, 3));
        c.add(GateKind::H, b2, beta_is(i, 3));
    }
    // W(beta_i, alpha_{i+1}): M = (H x 1) CNOT on (p_2i, p_2i+1) and on (q_2i, q_2i+1) when both inputs are 00.
    c.new_layer();
    for (int i = 1; i < n; i++) {
        Control both = beta_is(i, 0) & alpha_is(i + 1, 0);
        c.add(GateKind::CNOT, p_qubit(2 * i), p_qubit(2 * i + 1), both);
        c.add(GateKind::CNOT, q_qubit(2 * i), q_qubit(2 * i + 1), both);
    }
    c.new_layer();
    for (int i = 1; i < n; i++) {
        Control both = beta_is(i, 0) & alpha_is(i + 1, 0);
        c.add(GateKind::H, p_qubit(2 * i), both);
        c.add(GateKind::H, q_qubit(2 * i), both);
    }
    c.validate();
    return c;
}

LayeredCliffordCircuit build_msp_circuit(int n, const BitVec &z_in) {
    if (z_in.size() != size_t(4 * n)) {
        throw std::invalid_argument("z_in must have 4n bits");
    }
    return build_msp_controlled_circuit(n).resolved(z_in).compacted();
}

bool check_relation(const BitVec &z_in, const BitVec &z_out) {
    if (z_in.size() != z_out.size() || z_in.size() % 4 != 0 || z_in.size() == 0) {
        throw std::invalid_argument("z_in and z_out must both have 4n bits");
    }
    int n = int(z_in.size() / 4);
    return support_membership(build_msp_circuit(n, z_in), BitVec(), output_to_qubits(n, z_out));
}

GameOutput output_x(int, const BitVec &z, int j) { return {z.get(alpha_bit(j, 1)), z.get(alpha_bit(j, 2))}; }

GameOutput output_y(int n, const BitVec &z, int j) { return {z.get(beta_bit(n, j, 1)), z.get(beta_bit(n, j, 2))}; }

GameParams window_params(const MSPInstance &inst, const BitVec &z) {
    GameParams p;
    for (int i = inst.j; i <= inst.k - 1; i++) {
        GameOutput y = output_y(inst.n, z, i);
        GameOutput x = output_x(inst.n, z, i + 1);
        p.s *= sgn(y.b1);
        p.sp *= sgn(y.b2);
        p.t *= sgn(x.b1);
        p.tp *= sgn(x.b2);
    }
    return p;
}

bool check_stst_condition(const MSPInstance &inst, const BitVec &z) {
    if (z.size() != size_t(4 * inst.n)) {
        throw std::invalid_argument("z_out must have 4n bits");
    }
    GameParams p = window_params(inst, z);
    return check_generalized_win(inst.alpha, inst.beta, output_x(inst.n, z, inst.j), output_y(inst.n, z, inst.k), p);
}

BitVec sample_msp_output(int n, const BitVec &z_in, std::mt19937_64 &rng) {
    StabilizerTableau t(size_t(4 * n));
    t.apply_circuit(build_msp_controlled_circuit(n), z_in);
    BitVec qb(size_t(4 * n));
    for (int q = 0; q < 4 * n; q++) {
        qb.set(q, t.measure_z(q, rng).outcome);
    }
    return qubits_to_output(n, qb);
}

MspCheckSummary msp_check(int n, uint64_t trials, uint64_t seed, int jobs) {
    std::atomic<uint64_t> relation{0}, stst{0};
    parallel_for(trials, jobs, [&](size_t i) {
        auto rng = trial_rng(seed, i);
        MSPInstance inst = random_instance(n, rng);
        BitVec z = sample_msp_output(n, inst.z_in(), rng);
        relation += !check_relation(inst.z_in(), z);
        stst += !check_stst_condition(inst, z);
    });
    return {n, trials, relation.load(), stst.load()};
}

std::string msp_check_csv(const std::vector<MspCheckSummary> &rows) {
    std::ostringstream out;
    out << "n,trials,relation_failures,stst_failures\n";
    for (const auto &r : rows) {
        out << r.n << ',' << r.trials << ',' << r.relation_failures << ',' << r.stst_failures << '\n';
    }
    return out.str();
}

}  // namespace shallowsep
