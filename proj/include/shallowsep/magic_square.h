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

#ifndef SHALLOWSEP_MAGIC_SQUARE_H
#define SHALLOWSEP_MAGIC_SQUARE_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shallowsep/circuit.h"

namespace shallowsep {

/// A two-bit game input written as a string "01", "10" or "11"; value() is 2 * first + second, so iota is value().
struct GameInput {
    uint8_t value = 0;

    static GameInput parse(const std::string &bits);
    std::string str() const;
    bool first() const { return value & 2; }
    bool second() const { return value & 1; }
    bool operator==(const GameInput &o) const { return value == o.value; }
};

/// Signs s, t, s', t' in {-1, +1}.
struct GameParams {
    int s = 1;
    int t = 1;
    int sp = 1;
    int tp = 1;
};

/// Two output bits (x^1, x^2); signs are (-1)^bit.
struct GameOutput {
    bool b1 = false;
    bool b2 = false;
};

int f_value(GameInput alpha, GameInput beta, const GameParams &params);

/// x^3 = -x^1 x^2, y^3 = y^1 y^2 and x^{iota(beta)} y^{iota(alpha)} = f_{alpha,beta}.
bool check_generalized_win(GameInput alpha, GameInput beta, GameOutput x, GameOutput y, const GameParams &params);

struct Fraction {
    int64_t num;
    int64_t den;
    bool operator==(const Fraction &o) const { return num * o.den == o.num * den; }
    double value() const { return double(num) / double(den); }
};

/// Best average winning probability over deterministic strategies, inputs uniform over the 9 pairs.
Fraction classical_game_value(const GameParams &params = {});
/// Best winning probability for the single input pair.
Fraction classical_game_value_single(GameInput alpha, GameInput beta, const GameParams &params = {});

/// Instance (j, k, alpha, beta) of the restricted input set, 1 <= j < k <= n.
struct MSPInstance {
    int n = 0;
    int j = 0;
    int k = 0;
    GameInput alpha;
    GameInput beta;

    BitVec z_in() const;
    std::string to_json() const;
    static MSPInstance from_json(const std::string &text);
    bool operator==(const MSPInstance &o) const {
        return n == o.n && j == o.j && k == o.k && alpha == o.alpha && beta == o.beta;
    }
};

/// Number of instances, 9 n (n - 1) / 2.
uint64_t instance_count(int n);
/// Instance with the given index in [0, instance_count(n)).
MSPInstance instance_at(int n, uint64_t index);
MSPInstance random_instance(int n, std::mt19937_64 &rng);

/// Qubit index of p_i and q_i (i is 1-based, 1 <= i <= 2n).
inline uint32_t p_qubit(int i) { return 2 * (i - 1); }
inline uint32_t q_qubit(int i) { return 2 * (i - 1) + 1; }
/// Input bit index of alpha_j^b and beta_j^b (j 1-based, b in {1,2}).
inline uint32_t alpha_bit(int j, int b) { return 2 * (j - 1) + (b - 1); }
inline uint32_t beta_bit(int n, int j, int b) { return 2 * n + 2 * (j - 1) + (b - 1); }

/// Output string z_out = (x_1..x_n, y_1..y_n) from the measured qubit string and back.
BitVec qubits_to_output(int n, const BitVec &qubit_bits);
BitVec output_to_qubits(int n, const BitVec &z_out);

/// Circuit with every option present, controlled by the 4n input bits.
LayeredCliffordCircuit build_msp_controlled_circuit(int n);
/// The circuit for one input, with controls resolved and gates packed as early as possible.
LayeredCliffordCircuit build_msp_circuit(int n, const BitVec &z_in);

/// Whether z_out has nonzero probability for input z_in. Exact.
bool check_relation(const BitVec &z_in, const BitVec &z_out);

GameParams window_params(const MSPInstance &inst, const BitVec &z_out);
bool check_stst_condition(const MSPInstance &inst, const BitVec &z_out);

/// Output block x_j or y_j of z_out.
GameOutput output_x(int n, const BitVec &z_out, int j);
GameOutput output_y(int n, const BitVec &z_out, int j);

/// One measurement of every qubit of the circuit for z_in, as z_out.
BitVec sample_msp_output(int n, const BitVec &z_in, std::mt19937_64 &rng);

struct MspCheckSummary {
    int n = 0;
    uint64_t trials = 0;
    uint64_t relation_failures = 0;
    uint64_t stst_failures = 0;
};

/// Trial i draws a uniform instance of S and one circuit output from trial_rng(seed, i), then checks the relation
/// and the window condition.
MspCheckSummary msp_check(int n, uint64_t trials, uint64_t seed, int jobs = 1);

/// CSV with header n,trials,relation_failures,stst_failures.
std::string msp_check_csv(const std::vector<MspCheckSummary> &rows);

}  // namespace shallowsep

#endif
