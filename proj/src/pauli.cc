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

#include "shallowsep/pauli.h"

#include <bit>
#include <stdexcept>

namespace shallowsep {

PauliOp::PauliOp(BitVec x_, BitVec z_, uint8_t phase_) : x(std::move(x_)), z(std::move(z_)), phase(phase_ & 3) {
    if (x.size() != z.size()) {
        throw std::invalid_argument("PauliOp x and z parts differ in length");
    }
}

PauliOp PauliOp::from_string(const std::string &text) {
    size_t pos = 0;
    uint8_t ph = 0;
    if (pos < text.size() && text[pos] == '-') {
        ph = 2;
        pos++;
    } else if (pos < text.size() && text[pos] == '+') {
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        ph = (ph + 1) & 3;
        pos++;
    }
    PauliOp r(text.size() - pos);
    r.phase = ph;
    for (size_t q = 0; pos < text.size(); pos++, q++) {
        r.set_pauli(q, text[pos]);
    }
    return r;
}

PauliOp PauliOp::single(size_t n, size_t q, char p) {
    PauliOp r(n);
    r.set_pauli(q, p);
    return r;
}

PauliOp PauliOp::x_on(size_t n, const std::vector<size_t> &qubits) {
    PauliOp r(n);
    for (size_t q : qubits) {
        r.x.flip(q);
    }
    return r;
}

PauliOp PauliOp::z_on(size_t n, const std::vector<size_t> &qubits) {
    PauliOp r(n);
    for (size_t q : qubits) {
        r.z.flip(q);
    }
    return r;
}

size_t PauliOp::weight() const {
    size_t c = 0;
    for (size_t w = 0; w < x.num_words(); w++) {
        c += std::popcount(x.data()[w] | z.data()[w]);
    }
    return c;
}

std::vector<size_t> PauliOp::support() const {
    BitVec u = x;
    u |= z;
    return u.ones();
}

char PauliOp::pauli_at(size_t q) const {
    static const char table[4] = {'I', 'X', 'Z', 'Y'};
    return table[(x.get(q) ? 1 : 0) | (z.get(q) ? 2 : 0)];
}

void PauliOp::set_pauli(size_t q, char p) {
    switch (p) {
        case 'I':
        case '_':
            x.set(q, false);
            z.set(q, false);
            break;
        case 'X':
            x.set(q, true);
            z.set(q, false);
            break;
        case 'Y':
            x.set(q, true);
            z.set(q, true);
            break;
        case 'Z':
            x.set(q, false);
            z.set(q, true);
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli character '") + p + "'");
    }
}

bool PauliOp::commutes(const PauliOp &other) const {
    if (other.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    uint64_t acc = 0;
    for (size_t w = 0; w < x.num_words(); w++) {
        acc ^= (x.data()[w] & other.z.data()[w]) ^ (z.data()[w] & other.x.data()[w]);
    }
    return (std::popcount(acc) & 1) == 0;
}

uint8_t pauli_product_phase(const BitVec &x1, const BitVec &z1, const BitVec &x2, const BitVec &z2) {
    // With P(x,z) = i^{xz} X^x Z^z, the product P(x1,z1) P(x2,z2) equals
    // i^{x1 z1 + x2 z2 + 2 z1 x2 - (x1^x2)(z1^z2)} P(x1^x2, z1^z2), summed over qubits.
    uint64_t k = 0;
    const uint64_t *a = x1.data();
    const uint64_t *b = z1.data();
    const uint64_t *c = x2.data();
    const uint64_t *d = z2.data();
    for (size_t w = 0; w < x1.num_words(); w++) {
        k += std::popcount(a[w] & b[w]);
        k += std::popcount(c[w] & d[w]);
        k += 2 * std::popcount(b[w] & c[w]);
        k += 3 * std::popcount((a[w] ^ c[w]) & (b[w] ^ d[w]));
    }
    return k & 3;
}

PauliOp &PauliOp::operator*=(const PauliOp &rhs) {
    if (rhs.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli size mismatch");
    }
    phase = (phase + rhs.phase + pauli_product_phase(x, z, rhs.x, rhs.z)) & 3;
    x ^= rhs.x;
    z ^= rhs.z;
    return *this;
}

PauliOp PauliOp::operator*(const PauliOp &rhs) const {
    PauliOp r = *this;
    r *= rhs;
    return r;
}

bool PauliOp::operator==(const PauliOp &other) const {
    return phase == other.phase && x == other.x && z == other.z;
}

PauliOp PauliOp::restricted(const std::vector<size_t> &qubits) const {
    PauliOp r(qubits.size());
    for (size_t i = 0; i < qubits.size(); i++) {
        r.x.set(i, x.get(qubits[i]));
        r.z.set(i, z.get(qubits[i]));
    }
    return r;
}

std::string PauliOp::str() const {
    static const char *prefixes[4] = {"+", "+i", "-", "-i"};
    std::string s = prefixes[phase & 3];
    for (size_t q = 0; q < num_qubits(); q++) {
        char c = pauli_at(q);
        s.push_back(c == 'I' ? '_' : c);
    }
    return s;
}

namespace {

/// Row-reduces the symplectic matrix in place; returns pivot columns per kept row. Column index c < n is an x column,
/// c >= n is z column c - n.
struct Reducer {
    size_t n;
    std::vector<PauliOp> rows;
    std::vector<size_t> pivots;

    explicit Reducer(size_t n_) : n(n_) {}

    static bool bit(const PauliOp &p, size_t n, size_t c) { return c < n ? p.x.get(c) : p.z.get(c - n); }

    /// Reduces p against existing rows (multiplying from the left, tracking phase). Returns true if p was reduced to
    /// identity up to phase.
    bool reduce(PauliOp &p) const {
        for (size_t i = 0; i < rows.size(); i++) {
            if (bit(p, n, pivots[i])) {
                p = rows[i] * p;
            }
        }
        return p.is_identity_up_to_phase();
    }

    bool insert(PauliOp p) {
        if (reduce(p)) {
            return false;
        }
        size_t c = 0;
        while (!bit(p, n, c)) {
            c++;
        }
        for (size_t i = 0; i < rows.size(); i++) {
            if (bit(rows[i], n, c)) {
                rows[i] = p * rows[i];
            }
        }
        rows.push_back(std::move(p));
        pivots.push_back(c);
        return true;
    }
};

}  // namespace

size_t symplectic_rank(const std::vector<PauliOp> &paulis) {
    if (paulis.empty()) {
        return 0;
    }
    Reducer r(paulis[0].num_qubits());
    for (const auto &p : paulis) {
        r.insert(p);
    }
    return r.rows.size();
}

int group_membership(const std::vector<PauliOp> &generators, const PauliOp &target) {
    Reducer r(target.num_qubits());
    for (const auto &g : generators) {
        r.insert(g);
    }
    // Generators commute, so every product of them is Hermitian up to the overall phase of each factor and the
    // reduction keeps track of the exact element of the group.
    PauliOp t = target;
    if (!r.reduce(t)) {
        return 0;
    }
    // t = g * target where g is a group element, and t is a phase times identity. If t = +I then target = g^{-1}.
    if (t.phase == 0) {
        return 1;
    }
    if (t.phase == 2) {
        return -1;
    }
    return 0;
}

}  // namespace shallowsep
