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

#include "test_util.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace shallowsep;

namespace shallowsep_test {

using cd = std::complex<double>;

StateVector::StateVector(size_t n) : n_(n), amp_(size_t{1} << n, 0.0) { amp_[0] = 1.0; }

void StateVector::apply_gate(GateKind k, uint32_t a, uint32_t b) {
    size_t ma = size_t{1} << a;
    size_t mb = size_t{1} << b;
    const double s = 1.0 / std::sqrt(2.0);
    const cd I(0, 1);
    switch (k) {
        case GateKind::H:
            for (size_t i = 0; i < amp_.size(); i++) {
                if (!(i & ma)) {
                    cd x = amp_[i];
                    cd y = amp_[i | ma];
                    amp_[i] = s * (x + y);
                    amp_[i | ma] = s * (x - y);
                }
            }
            return;
        case GateKind::S:
        case GateKind::S_DAG:
        case GateKind::Z:
        case GateKind::X:
        case GateKind::Y:
            for (size_t i = 0; i < amp_.size(); i++) {
                if (k == GateKind::S && (i & ma)) {
                    amp_[i] *= I;
                } else if (k == GateKind::S_DAG && (i & ma)) {
                    amp_[i] *= -I;
                } else if (k == GateKind::Z && (i & ma)) {
                    amp_[i] = -amp_[i];
                } else if ((k == GateKind::X || k == GateKind::Y) && !(i & ma)) {
                    cd x = amp_[i];
                    cd y = amp_[i | ma];
                    if (k == GateKind::X) {
                        amp_[i] = y;
                        amp_[i | ma] = x;
                    } else {
                        // Y|0> = i|1>, Y|1> = -i|0>.
                        amp_[i] = -I * y;
                        amp_[i | ma] = I * x;
                    }
                }
            }
            return;
        case GateKind::CNOT:
            for (size_t i = 0; i < amp_.size(); i++) {
                if ((i & ma) && !(i & mb)) {
                    std::swap(amp_[i], amp_[i | mb]);
                }
            }
            return;
        case GateKind::CZ:
            for (size_t i = 0; i < amp_.size(); i++) {
                if ((i & ma) && (i & mb)) {
                    amp_[i] = -amp_[i];
                }
            }
            return;
        case GateKind::SWAP:
            for (size_t i = 0; i < amp_.size(); i++) {
                if ((i & ma) && !(i & mb)) {
                    std::swap(amp_[i], amp_[(i ^ ma) | mb]);
                }
            }
            return;
    }
}

void StateVector::apply_circuit(const LayeredCliffordCircuit &c, const BitVec &inputs) {
    for (size_t t = 0; t < c.depth(); t++) {
        for (const Gate *g : c.active_gates(t, inputs)) {
            apply_gate(g->kind, g->q0, g->q1);
        }
    }
}

void StateVector::apply_pauli(const PauliOp &p) {
    // i^phase X^x Z^z with Y = iXZ per qubit: apply Z parts, then X parts, then the scalar.
    for (size_t q = 0; q < n_; q++) {
        if (p.z.get(q)) {
            apply_gate(GateKind::Z, q);
        }
    }
    for (size_t q = 0; q < n_; q++) {
        if (p.x.get(q)) {
            apply_gate(GateKind::X, q);
        }
    }
    int k = p.phase;
    for (size_t q = 0; q < n_; q++) {
        if (p.x.get(q) && p.z.get(q)) {
            k++;
        }
    }
    cd f = std::pow(cd(0, 1), k & 3);
    for (auto &a : amp_) {
        a *= f;
    }
}

double StateVector::probability(const BitVec &z) const {
    size_t idx = 0;
    for (size_t q = 0; q < n_; q++) {
        if (z.get(q)) {
            idx |= size_t{1} << q;
        }
    }
    return std::norm(amp_[idx]);
}

double StateVector::expectation(const PauliOp &p) const {
    StateVector other = *this;
    other.apply_pauli(p);
    cd acc = 0;
    for (size_t i = 0; i < amp_.size(); i++) {
        acc += std::conj(amp_[i]) * other.amp_[i];
    }
    return acc.real();
}

LayeredCliffordCircuit random_circuit(size_t n, size_t layers, std::mt19937_64 &rng) {
    LayeredCliffordCircuit c(n);
    const GateKind kinds[] = {GateKind::H,    GateKind::S,  GateKind::S_DAG, GateKind::X,   GateKind::Y,
                              GateKind::Z,    GateKind::CNOT, GateKind::CZ,  GateKind::SWAP};
    for (size_t t = 0; t < layers; t++) {
        c.new_layer();
        std::vector<uint32_t> perm(n);
        for (size_t i = 0; i < n; i++) {
            perm[i] = i;
        }
        std::shuffle(perm.begin(), perm.end(), rng);
        size_t i = 0;
        while (i < n) {
            GateKind k = kinds[rng() % 9];
            if (is_two_qubit(k)) {
                if (i + 1 >= n) {
                    break;
                }
                c.add(k, perm[i], perm[i + 1]);
                i += 2;
            } else {
                c.add(k, perm[i]);
                i += 1;
            }
        }
    }
    return c;
}

PauliOp random_pauli(size_t n, std::mt19937_64 &rng) {
    PauliOp p(n);
    for (size_t q = 0; q < n; q++) {
        p.set_pauli(q, "IXYZ"[rng() % 4]);
    }
    p.phase = (rng() & 1) ? 2 : 0;
    return p;
}

bool within_sigmas(double observed_count, double trials, double p, double sigmas) {
    double mean = trials * p;
    double sd = std::sqrt(trials * p * (1 - p));
    return std::abs(observed_count - mean) <= sigmas * sd + 1e-9;
}

}  // namespace shallowsep_test
