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

#include "shallowsep/tableau.h"

#include <stdexcept>

namespace shallowsep {

StabilizerTableau::StabilizerTableau(size_t n) : n_(n) {
    stab_.reserve(n);
    destab_.reserve(n);
    for (size_t q = 0; q < n; q++) {
        stab_.push_back(PauliOp::single(n, q, 'Z'));
        destab_.push_back(PauliOp::single(n, q, 'X'));
    }
}

std::vector<PauliOp> pure_errors(const std::vector<PauliOp> &stabilizers) {
    size_t k = stabilizers.size();
    if (k == 0) {
        return {};
    }
    size_t n = stabilizers[0].num_qubits();
    if (k > n) {
        throw std::invalid_argument("more stabilizers than qubits");
    }
    for (size_t i = 0; i < k; i++) {
        for (size_t j = i + 1; j < k; j++) {
            if (!stabilizers[i].commutes(stabilizers[j])) {
                throw std::invalid_argument("stabilizers do not commute");
            }
        }
    }
    // Row j is (z_j | x_j), so that row . (x_D | z_D) is the symplectic product of S_j with D.
    std::vector<BitVec> rows(k, BitVec(2 * n));
    std::vector<BitVec> combo(k, BitVec(k));
    for (size_t j = 0; j < k; j++) {
        for (size_t q : stabilizers[j].z.ones()) {
            rows[j].set(q, true);
        }
        for (size_t q : stabilizers[j].x.ones()) {
            rows[j].set(n + q, true);
        }
        combo[j].set(j, true);
    }
    std::vector<size_t> pivot(k);
    size_t r = 0;
    for (size_t c = 0; c < 2 * n && r < k; c++) {
        size_t p = r;
        while (p < k && !rows[p].get(c)) {
            p++;
        }
        if (p == k) {
            continue;
        }
        std::swap(rows[p], rows[r]);
        std::swap(combo[p], combo[r]);
        for (size_t i = 0; i < k; i++) {
            if (i != r && rows[i].get(c)) {
                rows[i] ^= rows[r];
                combo[i] ^= combo[r];
            }
        }
        pivot[r] = c;
        r++;
    }
    if (r < k) {
        throw std::invalid_argument("stabilizers are not independent");
    }
    // Reduced row r is sum_j combo[r][j] S_j and has a single pivot, so the unit vector at pivot[r] has symplectic
    // product with S_j equal to (combo^{-1})[j][r]. Then D_i = sum_r combo[r][i] e_{pivot[r]}.
    std::vector<PauliOp> out(k, PauliOp(n));
    for (size_t rr = 0; rr < k; rr++) {
        size_t c = pivot[rr];
        for (size_t i : combo[rr].ones()) {
            if (c < n) {
                out[i].x.flip(c);
            } else {
                out[i].z.flip(c - n);
            }
        }
    }
    // Make the pure errors commute with each other.
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < i; j++) {
            if (!out[i].commutes(out[j])) {
                out[i] *= stabilizers[j];
            }
        }
        out[i].phase = 0;
    }
    return out;
}

StabilizerTableau StabilizerTableau::from_stabilizers(const std::vector<PauliOp> &stabilizers) {
    if (stabilizers.empty()) {
        return StabilizerTableau(0);
    }
    size_t n = stabilizers[0].num_qubits();
    if (stabilizers.size() != n) {
        throw std::invalid_argument("need exactly n stabilizers for an n-qubit state");
    }
    for (const auto &s : stabilizers) {
        if (!s.is_hermitian()) {
            throw std::invalid_argument("stabilizer is not Hermitian");
        }
    }
    StabilizerTableau t(n);
    t.destab_ = pure_errors(stabilizers);
    t.stab_ = stabilizers;
    return t;
}

void StabilizerTableau::apply_gate(GateKind k, uint32_t q0, uint32_t q1) {
    for (auto &row : stab_) {
        conjugate_by_gate(k, q0, q1, row);
    }
    for (auto &row : destab_) {
        conjugate_by_gate(k, q0, q1, row);
    }
}

void StabilizerTableau::apply_circuit(const LayeredCliffordCircuit &c, const BitVec &inputs) {
    if (c.num_qubits() != n_) {
        throw std::invalid_argument("circuit size differs from tableau size");
    }
    for (size_t t = 0; t < c.depth(); t++) {
        for (const Gate *g : c.active_gates(t, inputs)) {
            apply_gate(g->kind, g->q0, g->q1);
        }
    }
}

void StabilizerTableau::apply_pauli(const PauliOp &p) {
    for (auto &row : stab_) {
        if (!row.commutes(p)) {
            row.phase = (row.phase + 2) & 3;
        }
    }
}

void StabilizerTableau::row_mul(PauliOp &target, const PauliOp &source) const { target *= source; }

MeasureResult StabilizerTableau::measure_z(size_t q, std::mt19937_64 &rng) {
    auto det = peek_z(q);
    if (det.has_value()) {
        return {*det, false};
    }
    bool outcome = rng() & 1;
    measure_z_forced(q, outcome);
    return {outcome, true};
}

std::optional<bool> StabilizerTableau::peek_z(size_t q) const {
    for (size_t i = 0; i < n_; i++) {
        if (stab_[i].x.get(q)) {
            return std::nullopt;
        }
    }
    PauliOp acc(n_);
    for (size_t i = 0; i < n_; i++) {
        if (destab_[i].x.get(q)) {
            acc *= stab_[i];
        }
    }
    return acc.phase == 2;
}

bool StabilizerTableau::measure_z_forced(size_t q, bool outcome) {
    if (q >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
    size_t p = n_;
    for (size_t i = 0; i < n_; i++) {
        if (stab_[i].x.get(q)) {
            p = i;
            break;
        }
    }
    if (p == n_) {
        return *peek_z(q) == outcome;
    }
    for (size_t i = 0; i < n_; i++) {
        if (i != p && stab_[i].x.get(q)) {
            row_mul(stab_[i], stab_[p]);
        }
        if (destab_[i].x.get(q)) {
            row_mul(destab_[i], stab_[p]);
        }
    }
    destab_[p] = stab_[p];
    destab_[p].phase = 0;
    stab_[p] = PauliOp::single(n_, q, 'Z');
    stab_[p].phase = outcome ? 2 : 0;
    return true;
}

int StabilizerTableau::expectation(const PauliOp &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli size differs from tableau size");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("expectation of a non-Hermitian Pauli");
    }
    for (const auto &s : stab_) {
        if (!s.commutes(p)) {
            return 0;
        }
    }
    PauliOp acc(n_);
    for (size_t i = 0; i < n_; i++) {
        if (!destab_[i].commutes(p)) {
            acc *= stab_[i];
        }
    }
    if (!acc.equal_up_to_phase(p)) {
        throw std::logic_error("tableau is inconsistent: commuting Pauli not generated by stabilizers");
    }
    return acc.phase == p.phase ? 1 : -1;
}

bool StabilizerTableau::support_contains(const BitVec &z) const {
    if (z.size() != n_) {
        throw std::invalid_argument("bit string size differs from tableau size");
    }
    StabilizerTableau copy = *this;
    for (size_t q = 0; q < n_; q++) {
        if (!copy.measure_z_forced(q, z.get(q))) {
            return false;
        }
    }
    return true;
}

StabilizerTableau StabilizerTableau::restricted_to(const std::vector<size_t> &qubits) const {
    std::vector<bool> keep(n_, false);
    for (size_t q : qubits) {
        keep[q] = true;
    }
    // Eliminate the columns of discarded qubits first; rows left without a pivot there live on the kept qubits.
    std::vector<size_t> cols;
    for (size_t q = 0; q < n_; q++) {
        if (!keep[q]) {
            cols.push_back(q);
            cols.push_back(n_ + q);
        }
    }
    std::vector<PauliOp> rows = stab_;
    size_t r = 0;
    auto bit = [&](const PauliOp &p, size_t c) { return c < n_ ? p.x.get(c) : p.z.get(c - n_); };
    for (size_t c : cols) {
        size_t p = r;
        while (p < rows.size() && !bit(rows[p], c)) {
            p++;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[p], rows[r]);
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != r && bit(rows[i], c)) {
                rows[i] *= rows[r];
            }
        }
        r++;
    }
    std::vector<PauliOp> kept;
    for (size_t i = r; i < rows.size(); i++) {
        kept.push_back(rows[i].restricted(qubits));
        kept.back().phase = rows[i].phase;
    }
    if (kept.size() != qubits.size()) {
        throw std::invalid_argument("kept qubits are entangled with the discarded ones");
    }
    return from_stabilizers(kept);
}

bool support_membership(const LayeredCliffordCircuit &c, const BitVec &inputs, const BitVec &z_out) {
    StabilizerTableau t(c.num_qubits());
    t.apply_circuit(c, inputs);
    return t.support_contains(z_out);
}

}  // namespace shallowsep
