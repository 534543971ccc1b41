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

#include "shallowsep/noise_model.h"

#include <stdexcept>

#include "shallowsep/rng.h"
#include "shallowsep/tableau.h"

namespace shallowsep {

std::string noise_model_name(NoiseModel m) {
    switch (m) {
        case NoiseModel::IidDepolarizing:
            return "iid_depolarizing";
        case NoiseModel::IidXZ:
            return "iid_xz";
        case NoiseModel::IidX:
            return "iid_x";
        case NoiseModel::None:
            return "none";
    }
    return "?";
}

NoiseModel noise_model_from_name(const std::string &name) {
    for (NoiseModel m : {NoiseModel::IidDepolarizing, NoiseModel::IidXZ, NoiseModel::IidX, NoiseModel::None}) {
        if (noise_model_name(m) == name) {
            return m;
        }
    }
    throw std::invalid_argument("unknown noise model: " + name);
}

namespace {

void check_probability(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string("invalid probability for ") + what + ": " + std::to_string(p));
    }
}

}  // namespace

void NoiseSpec::validate() const {
    check_probability(p_in, "p_in");
    check_probability(p, "p");
    check_probability(p_out, "p_out");
}

PauliOp sample_iid_pauli(size_t n, double p, NoiseModel model, std::mt19937_64 &rng) {
    check_probability(p, "p");
    PauliOp e(n);
    if (model == NoiseModel::None || p == 0) {
        return e;
    }
    for (size_t q = 0; q < n; q++) {
        switch (model) {
            case NoiseModel::IidDepolarizing:
                if (bernoulli(rng, p)) {
                    uint64_t k = rng() % 3;
                    e.x.set(q, k != 1);
                    e.z.set(q, k != 0);
                }
                break;
            case NoiseModel::IidXZ:
                e.x.set(q, bernoulli(rng, p));
                e.z.set(q, bernoulli(rng, p));
                break;
            case NoiseModel::IidX:
                e.x.set(q, bernoulli(rng, p));
                break;
            case NoiseModel::None:
                break;
        }
    }
    return e;
}

PauliOp merge_errors(const PauliOp &e1, const PauliOp &e2) { return e1 * e2; }

PauliOp merge_error_list(const LayeredCliffordCircuit &c, const BitVec &inputs, const std::vector<PauliOp> &errors) {
    if (errors.size() != c.depth() + 2) {
        throw std::invalid_argument("need depth + 2 error locations");
    }
    PauliOp acc = errors[0];
    for (size_t t = 0; t < c.depth(); t++) {
        conjugate_by_layer(c, t, inputs, acc);
        acc = errors[t + 1] * acc;
    }
    return errors.back() * acc;
}

PauliOp sample_merged_error(const LayeredCliffordCircuit &c, const BitVec &inputs, const NoiseSpec &spec,
                            std::mt19937_64 &rng) {
    spec.validate();
    size_t n = c.num_qubits();
    if (inputs.size() < c.num_inputs()) {
        throw std::invalid_argument("unresolved control bit");
    }
    PauliOp acc = sample_iid_pauli(n, spec.p_in, spec.model, rng);
    for (size_t t = 0; t < c.depth(); t++) {
        conjugate_by_layer(c, t, inputs, acc);
        if (spec.p > 0) {
            acc = sample_iid_pauli(n, spec.p, spec.model, rng) * acc;
        }
    }
    if (spec.p_out > 0) {
        acc = sample_iid_pauli(n, spec.p_out, spec.model, rng) * acc;
    }
    return acc;
}

NoisyRun run_noisy_circuit(const LayeredCliffordCircuit &c, const BitVec &inputs, const NoiseSpec &spec,
                           std::mt19937_64 &rng) {
    PauliOp e = sample_merged_error(c, inputs, spec, rng);
    StabilizerTableau t(c.num_qubits());
    t.apply_circuit(c, inputs);
    t.apply_pauli(e);
    BitVec out(c.num_qubits());
    for (size_t q = 0; q < c.num_qubits(); q++) {
        out.set(q, t.measure_z(q, rng).outcome);
    }
    return {std::move(out), std::move(e)};
}

}  // namespace shallowsep
