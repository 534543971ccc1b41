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

#ifndef SHALLOWSEP_NOISE_MODEL_H
#define SHALLOWSEP_NOISE_MODEL_H

#include <random>
#include <string>
#include <vector>

#include "shallowsep/circuit.h"
#include "shallowsep/pauli.h"

namespace shallowsep {

/// iid_x flips only X, as in code-capacity runs.
enum class NoiseModel { IidDepolarizing, IidXZ, IidX, None };

std::string noise_model_name(NoiseModel m);
NoiseModel noise_model_from_name(const std::string &name);

/// Rates of the error before the first layer, after each layer, and right before measurement.
struct NoiseSpec {
    double p_in = 0;
    double p = 0;
    double p_out = 0;
    NoiseModel model = NoiseModel::None;

    void validate() const;
    bool is_noiseless() const { return model == NoiseModel::None || (p_in == 0 && p == 0 && p_out == 0); }
};

PauliOp sample_iid_pauli(size_t n, double p, NoiseModel model, std::mt19937_64 &rng);

/// Product e1 * e2 including the phase.
PauliOp merge_errors(const PauliOp &e1, const PauliOp &e2);

/// Pushes per-location errors through the circuit: errors[0] acts before layer 1, errors[t] after layer t, and the
/// last entry right before measurement. Returns E with E_out E_D U_D ... E_1 U_1 E_in = E U_D ... U_1.
PauliOp merge_error_list(const LayeredCliffordCircuit &c, const BitVec &inputs, const std::vector<PauliOp> &errors);

/// Samples the per-location errors of spec and merges them.
PauliOp sample_merged_error(const LayeredCliffordCircuit &c, const BitVec &inputs, const NoiseSpec &spec,
                            std::mt19937_64 &rng);

struct NoisyRun {
    BitVec outcome;
    PauliOp final_error;
};

/// Runs the circuit on |0...0>, applies the merged error and measures every qubit in the Z basis.
NoisyRun run_noisy_circuit(const LayeredCliffordCircuit &c, const BitVec &inputs, const NoiseSpec &spec,
                           std::mt19937_64 &rng);

}  // namespace shallowsep

#endif
