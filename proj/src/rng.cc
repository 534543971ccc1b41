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

#include "shallowsep/rng.h"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shallowsep {

std::mt19937_64 trial_rng(uint64_t seed, uint64_t index) {
    std::seed_seq seq{uint32_t(seed), uint32_t(seed >> 32), uint32_t(index), uint32_t(index >> 32), 0x5eedu};
    return std::mt19937_64(seq);
}

BitVec random_bits(size_t n, std::mt19937_64 &rng) {
    BitVec r(n);
    uint64_t *w = r.data();
    for (size_t i = 0; i < r.num_words(); i++) {
        w[i] = rng();
    }
    r.resize(n);
    return r;
}

void parallel_for(size_t count, int jobs, const std::function<void(size_t)> &body) {
    if (jobs <= 1 || count <= 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) {
                    err = std::current_exception();
                }
                next = count;
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; t++) {
        threads.emplace_back(worker);
    }
    for (auto &t : threads) {
        t.join();
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

}  // namespace shallowsep
