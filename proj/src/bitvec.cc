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

#include "shallowsep/bitvec.h"

#include <stdexcept>

namespace shallowsep {

BitVec BitVec::from_string(const std::string &bits) {
    BitVec r(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1') {
            r.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string contains a character other than 0 or 1");
        }
    }
    return r;
}

BitVec BitVec::from_indices(size_t n, const std::vector<size_t> &indices) {
    BitVec r(n);
    for (size_t i : indices) {
        r.flip(i);
    }
    return r;
}

BitVec &BitVec::operator^=(const BitVec &other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

BitVec &BitVec::operator|=(const BitVec &other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

BitVec BitVec::operator^(const BitVec &other) const {
    BitVec r = *this;
    r ^= other;
    return r;
}

BitVec BitVec::operator&(const BitVec &other) const {
    BitVec r = *this;
    r &= other;
    return r;
}

bool BitVec::operator<(const BitVec &other) const {
    if (n_ != other.n_) {
        return n_ < other.n_;
    }
    return words_ < other.words_;
}

size_t BitVec::popcount() const {
    size_t c = 0;
    for (uint64_t w : words_) {
        c += std::popcount(w);
    }
    return c;
}

bool BitVec::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

void BitVec::clear() {
    for (auto &w : words_) {
        w = 0;
    }
}

bool BitVec::dot(const BitVec &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

std::vector<size_t> BitVec::ones() const {
    std::vector<size_t> r;
    for (size_t w = 0; w < words_.size(); w++) {
        uint64_t v = words_[w];
        while (v) {
            r.push_back(w * 64 + std::countr_zero(v));
            v &= v - 1;
        }
    }
    return r;
}

BitVec BitVec::slice(size_t start, size_t len) const {
    if (start + len > n_) {
        throw std::out_of_range("BitVec slice out of range");
    }
    BitVec r(len);
    for (size_t i = 0; i < len; i++) {
        if (get(start + i)) {
            r.set(i, true);
        }
    }
    return r;
}

void BitVec::assign_slice(size_t start, const BitVec &src) {
    if (start + src.size() > n_) {
        throw std::out_of_range("BitVec slice out of range");
    }
    for (size_t i = 0; i < src.size(); i++) {
        set(start + i, src.get(i));
    }
}

void BitVec::resize(size_t n) {
    n_ = n;
    words_.resize((n + 63) / 64, 0);
    if (n & 63) {
        words_.back() &= (uint64_t{1} << (n & 63)) - 1;
    }
}

std::string BitVec::str() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

std::string BitVec::to_hex() const {
    static const char *digits = "0123456789abcdef";
    std::string s;
    for (size_t i = 0; i < n_; i += 4) {
        int v = 0;
        for (size_t k = 0; k < 4; k++) {
            v <<= 1;
            if (i + k < n_ && get(i + k)) {
                v |= 1;
            }
        }
        s.push_back(digits[v]);
    }
    return s;
}

BitVec BitVec::from_hex(const std::string &hex, size_t n) {
    if (hex.size() != (n + 3) / 4) {
        throw std::invalid_argument("hex string has wrong length for " + std::to_string(n) + " bits");
    }
    BitVec r(n);
    for (size_t d = 0; d < hex.size(); d++) {
        char c = hex[d];
        int v;
        if (c >= '0' && c <= '9') {
            v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            v = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            v = c - 'A' + 10;
        } else {
            throw std::invalid_argument("bad hex digit");
        }
        for (size_t k = 0; k < 4; k++) {
            bool b = (v >> (3 - k)) & 1;
            size_t i = d * 4 + k;
            if (i < n) {
                r.set(i, b);
            } else if (b) {
                throw std::invalid_argument("hex string has nonzero padding bits");
            }
        }
    }
    return r;
}

uint64_t BitVec::hash() const {
    // FNV-1a over the words, then the length.
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&](uint64_t v) {
        for (int k = 0; k < 8; k++) {
            h ^= (v >> (8 * k)) & 0xFF;
            h *= 1099511628211ULL;
        }
    };
    for (uint64_t w : words_) {
        mix(w);
    }
    mix(n_);
    return h;
}

}  // namespace shallowsep
