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

#ifndef SHALLOWSEP_BITVEC_H
#define SHALLOWSEP_BITVEC_H

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace shallowsep {

/// Fixed-length bit string packed into 64-bit words. Bits past size() are always zero.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static BitVec from_string(const std::string &bits);
    static BitVec from_indices(size_t n, const std::vector<size_t> &indices);

    size_t size() const { return n_; }
    size_t num_words() const { return words_.size(); }
    uint64_t *data() { return words_.data(); }
    const uint64_t *data() const { return words_.data(); }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= m;
        } else {
            words_[i >> 6] &= ~m;
        }
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }
    bool operator[](size_t i) const { return get(i); }

    BitVec &operator^=(const BitVec &other);
    BitVec &operator&=(const BitVec &other);
    BitVec &operator|=(const BitVec &other);
    BitVec operator^(const BitVec &other) const;
    BitVec operator&(const BitVec &other) const;
    bool operator==(const BitVec &other) const { return n_ == other.n_ && words_ == other.words_; }
    bool operator!=(const BitVec &other) const { return !(*this == other); }
    bool operator<(const BitVec &other) const;

    size_t popcount() const;
    bool any() const;
    bool none() const { return !any(); }
    void clear();
    /// Parity of the AND with `other`.
    bool dot(const BitVec &other) const;

    std::vector<size_t> ones() const;
    BitVec slice(size_t start, size_t len) const;
    void assign_slice(size_t start, const BitVec &src);
    void resize(size_t n);

    std::string str() const;
    /// Hex digits, four bits per digit, first bit is the most significant bit of the first digit.
    std::string to_hex() const;
    static BitVec from_hex(const std::string &hex, size_t n);
    uint64_t hash() const;

   private:
    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace shallowsep

#endif
