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

#ifndef SHALLOWSEP_BELL_SAMPLER_H
#define SHALLOWSEP_BELL_SAMPLER_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shallowsep/cluster3d.h"

namespace shallowsep {

/// Samples (s, B-state) of the noisy preparation without a tableau per trial.
///
/// One tableau run fixes a reference outcome s_ref and the reference B-state. For a trial with error E, pick r
/// uniformly and set F = E prod_u G_u^{r_u}. Since prod G_u^{r_u} stabilizes W|0>, EW|0> = FW|0>, so the outcome is
/// s_ref xor x(F) on A and the unnormalised B-state is F_B times the reference B-state. Uniform r makes the outcome
/// uniform over its coset, which is the exact distribution.
class ClusterFrameSampler {
   public:
    ClusterFrameSampler(const ClusterLattice &lat, uint64_t reference_seed);

    struct Sample {
        BitVec s;
        PauliOp frame_b;  // F restricted to B
    };
    Sample sample(const PauliOp &error, std::mt19937_64 &rng) const;
    /// Pauli R on B with post-Rec state = R |Phi>, up to phase: rec(s) F_B rec(s_ref).
    PauliOp residual(const Sample &smp) const;

    const BitVec &s_ref() const { return s_ref_; }
    const PauliOp &rec_ref() const { return rec_ref_; }
    const ClusterLattice &lattice() const { return lat_; }

   private:
    const ClusterLattice &lat_;
    BitVec s_ref_;
    PauliOp rec_ref_;
};

struct BellPrepStats {
    int d = 0;
    double p = 0;
    std::string model;
    uint64_t trials = 0;
    uint64_t logical_x_fail = 0;
    uint64_t logical_z_fail = 0;
    uint64_t logical_fail = 0;  // x or z
    double mean_rep_weight = 0;
    /// Trials where the repair decomposition and the state classification disagree. Zero when the analysis holds.
    uint64_t cross_check_mismatches = 0;
    /// Largest per-qubit frequency of the support of rep_z.
    double max_rep_z_marginal = 0;
};

/// Runs `trials` noisy preparations; trial i draws its error and frame from trial_rng(seed, i).
BellPrepStats bell_prep_experiment(const ClusterLattice &lat, const NoiseSpec &spec, uint64_t trials, uint64_t seed,
                                   int jobs = 1);

/// CSV with header d,p,model,trials,logical_x_fail,logical_z_fail,mean_rep_weight. Fail columns are counts.
std::string bell_prep_csv(const std::vector<BellPrepStats> &rows);

}  // namespace shallowsep

#endif
