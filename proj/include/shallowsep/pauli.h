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

#ifndef SHALLOWSEP_PAULI_H
#define SHALLOWSEP_PAULI_H

#include <string>
#include <vector>

#include "shallowsep/bitvec.h"

namespace shallowsep {

/// A Pauli operator i^phase * prod_q P_q where P_q is I, X, Z or Y for (x_q, z_q) = (0,0), (1,0), (0,1), (1,1).
///
/// Y is the Hermitian Pauli Y = iXZ, so a Pauli is Hermitian exactly when phase is even.
struct PauliOp {
    BitVec x;
    BitVec z;
    uint8_t phase = 0;

    PauliOp() = default;
    explicit PauliOp(size_t n) : x(n), z(n) {}
    PauliOp(BitVec x_, BitVec z_, uint8_t phase_ = 0);

    /// Parses strings like "+XIZY", "-ZZ", "iX_Y". Underscore and I both mean identity.
    static PauliOp from_string(const std::string &text);
    static PauliOp single(size_t n, size_t q, char p);
    static PauliOp x_on(size_t n, const std::vector<size_t> &qubits);
    static PauliOp z_on(size_t n, const std::vector<size_t> &qubits);

    size_t num_qubits() const { return x.size(); }
    size_t weight() const;
    std::vector<size_t> support() const;
    bool is_identity_up_to_phase() const { return x.none() && z.none(); }
    bool is_hermitian() const { return (phase & 1) == 0; }
    /// +1 or -1 for Hermitian Paulis.
    int sign() const { return (phase & 2) ? -1 : 1; }

    char pauli_at(size_t q) const;
    void set_pauli(size_t q, char p);

    bool commutes(const PauliOp &other) const;
    /// In-place right multiplication: *this = *this * rhs.
    PauliOp &operator*=(const PauliOp &rhs);
    PauliOp operator*(const PauliOp &rhs) const;
    bool operator==(const PauliOp &other) const;
    bool operator!=(const PauliOp &other) const { return !(*this == other); }
    /// Equality ignoring the phase.
    bool equal_up_to_phase(const PauliOp &other) const { return x == other.x && z == other.z; }

    PauliOp restricted(const std::vector<size_t> &qubits) const;
    std::string str() const;
};

/// Phase exponent k such that the product of the two Paulis (bits only, phases ignored) is i^k times the Pauli with
/// XOR'd bits.
uint8_t pauli_product_phase(const BitVec &x1, const BitVec &z1, const BitVec &x2, const BitVec &z2);

/// Rank of a set of Paulis viewed as symplectic vectors over GF(2).
size_t symplectic_rank(const std::vector<PauliOp> &paulis);

/// Decides whether `target` lies in the group generated by `generators` (which must pairwise commute), including the
/// phase. Returns 1 if target is in the group, -1 if -target is in the group, 0 if neither (up to phase).
int group_membership(const std::vector<PauliOp> &generators, const PauliOp &target);

}  // namespace shallowsep

#endif
