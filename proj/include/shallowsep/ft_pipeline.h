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

#ifndef SHALLOWSEP_FT_PIPELINE_H
#define SHALLOWSEP_FT_PIPELINE_H

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shallowsep/bell_sampler.h"
#include "shallowsep/circuit.h"
#include "shallowsep/cluster3d.h"
#include "shallowsep/magic_square.h"
#include "shallowsep/noise_model.h"
#include "shallowsep/surface_code.h"

namespace shallowsep {

/// Parameters of one fault-tolerant experiment. An empty instance means a fresh uniform instance per trial.
struct FtConfig {
    int n = 2;
    int d = 3;
    NoiseSpec noise;
    std::optional<MSPInstance> instance;
    uint64_t trials = 1;
    uint64_t seed = 0;

    void validate() const;
    /// {"n", "d", "noise": {"model", "p", "locations"}, "instance": "random" | {...}, "trials", "seed"}.
    std::string to_json() const;
    static FtConfig from_json(const std::string &text);
};

/// Noise spec with rate p at each listed location ("in", "layer", "out").
NoiseSpec noise_at_locations(NoiseModel model, double p, const std::vector<std::string> &locations);

struct FtTrialResult {
    BitVec z_in;
    /// Measured A bits, one syndrome per cube, cube-major. The doubled form s^1 s^1 s^2 s^2 ... is this string with every
    /// cube's block written twice, once for each logical qubit of the pair.
    BitVec s;
    /// Block measurements, logical-qubit-major: bit L * m + q is qubit q of block L.
    BitVec y;
    /// Decoded output z_out = (x_1..x_n, y_1..y_n).
    BitVec z;
    /// Per-block X part of the recovery propagated through the logical circuit.
    std::vector<BitVec> f;
    bool pass = false;
};

/// Logical circuit on 4n folded surface-code blocks: layers 3 to 7 of the controlled circuit for the 1D Magic Square
/// Problem with each gate replaced by its logical version. Block L holds qubits L * m .. L * m + m - 1 and encodes
/// the bare qubit L. Controls are kept.
LayeredCliffordCircuit build_logical_circuit(int n, const SurfaceCodeLayout &layout);
/// Same, with controls resolved for one input.
LayeredCliffordCircuit build_logical_circuit(int n, const BitVec &z_in, const SurfaceCodeLayout &layout);

/// Bare circuit matching build_logical_circuit: the controlled circuit without its two Bell-preparation layers.
LayeredCliffordCircuit bare_circuit_after_bell_prep(int n);

/// Cube c prepares the pair (p_{2i-1}, p_{2i}) for c = 2(i-1) and (q_{2i-1}, q_{2i}) for c = 2(i-1)+1. Returns the
/// logical qubit held by face 0 or 1.
int cube_block(int cube, int face);

/// The recovery of every cube placed on the 4n * m block qubits.
PauliOp system_recovery(const ClusterLattice &lat, int n, const std::vector<BitVec> &s_per_cube);

/// X part of C Rec(s) C^dagger, split by block. The Z part only changes phases of Z measurements and is dropped.
std::vector<BitVec> compute_f(const ClusterLattice &lat, const LayeredCliffordCircuit &logical, const BitVec &z_in,
                              const std::vector<BitVec> &s_per_cube);

/// Shared state of all trials at one (n, d): lattice, logical circuit, frame sampler and per-input reference data.
class FtPipeline {
   public:
    FtPipeline(int n, int d, uint64_t reference_seed = 1);

    int n() const { return n_; }
    int d() const { return lat_.d; }
    int num_cubes() const { return 2 * n_; }
    size_t block_size() const { return lat_.code.m; }
    const ClusterLattice &lattice() const { return lat_; }
    const SurfaceCodeLayout &layout() const { return lat_.code; }
    const LayeredCliffordCircuit &logical_circuit() const { return logical_; }
    const LayeredCliffordCircuit &cube_circuit() const { return w_; }

    FtTrialResult run_trial(const BitVec &z_in, const NoiseSpec &spec, std::mt19937_64 &rng) const;

    /// Decode step shared with run_trial: z_out from (b, s, y).
    BitVec decode(const BitVec &z_in, const BitVec &s, const BitVec &y) const;

    /// Replays trials with the recovery applied physically on a full tableau, instead of being folded into f, and
    /// counts trials where the folded outcome y xor f is impossible for the physical state or the two outcome spaces
    /// have different dimension. Zero when the masked-statistics argument holds.
    uint64_t masked_statistics_mismatches(const BitVec &z_in, const NoiseSpec &spec, uint64_t trials,
                                          uint64_t seed) const;

   private:
    struct Reference {
        BitVec y0;
        std::vector<BitVec> span;  // row-reduced X parts of the stabilizers of C |psi_ref>
    };
    struct Draw {
        std::vector<PauliOp> cube_errors;
        std::vector<ClusterFrameSampler::Sample> frames;
        std::vector<BitVec> idle_flips;
        PauliOp logical_error;
        BitVec s;
        BitVec y;
    };
    std::shared_ptr<const Reference> reference(const BitVec &z_in) const;
    Draw draw(const BitVec &z_in, const NoiseSpec &spec, std::mt19937_64 &rng) const;
    std::vector<BitVec> split_s(const BitVec &s) const;

    int n_;
    ClusterLattice lat_;
    LayeredCliffordCircuit w_;
    LayeredCliffordCircuit logical_;
    ClusterFrameSampler sampler_;
    mutable std::mutex mu_;
    mutable std::map<BitVec, std::shared_ptr<const Reference>> refs_;
};

struct FtPointSummary {
    int n = 0;
    int d = 0;
    double p = 0;
    uint64_t trials = 0;
    uint64_t passes = 0;
    double pass_rate() const { return trials ? double(passes) / double(trials) : 0.0; }
};

/// Runs cfg.trials trials; trial i uses trial_rng(cfg.seed, i), which also draws the instance when none is fixed.
std::vector<FtTrialResult> run_ft_experiment(const FtPipeline &pipeline, const FtConfig &cfg, int jobs = 1);

/// Pass rate when every y is replaced by a uniform string, with the same instance and syndrome sampling.
FtPointSummary random_guess_baseline(const FtPipeline &pipeline, const FtConfig &cfg, int jobs = 1);

/// CSV with header seed,trial,n,d,p,pass,s_hash,z_hex. p is the largest rate of the noise spec.
std::string ft_results_csv(const FtConfig &cfg, const std::vector<FtTrialResult> &results);

struct ThresholdResult {
    double p_star = 0;      // largest probed p with pass rate >= target
    double pass_rate = 0;   // its pass rate
    std::vector<FtPointSummary> probes;
};

/// Bisection on p in [0, p_hi] for pass rate >= target, with the noise at the given locations.
ThresholdResult locate_threshold(const FtPipeline &pipeline, NoiseModel model,
                                 const std::vector<std::string> &locations, double target, double p_hi,
                                 int iterations, uint64_t trials, uint64_t seed, int jobs = 1);

/// Physical qubit layout of the whole pipeline: cube c occupies qubits c * |C| .. (c+1) * |C| - 1 in site order.
struct PipelineCircuit {
    LayeredCliffordCircuit circuit;  // W on every cube, then the logical circuit on the B sites
    size_t cube_depth = 0;
    std::vector<size_t> block_qubit;  // logical-circuit qubit -> physical qubit
};

/// Builds the full physical circuit with 3D coordinates. Cubes are folded across u1 - 1 = u2 and chained along u3,
/// p cubes and q cubes side by side, so that face 1 of a cube touches face 0 of the next cube of the same kind.
PipelineCircuit build_pipeline_circuit(int n, const ClusterLattice &lat);

/// Largest Manhattan distance between the qubits of any two-qubit gate, over all gates regardless of controls.
/// Throws std::invalid_argument when coordinates are missing.
int locality_audit(const LayeredCliffordCircuit &c);

}  // namespace shallowsep

#endif
