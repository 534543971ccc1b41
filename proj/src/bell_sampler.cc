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

#include "shallowsep/bell_sampler.h"

#include <algorithm>
#include <sstream>

#include "shallowsep/rng.h"

namespace shallowsep {

ClusterFrameSampler::ClusterFrameSampler(const ClusterLattice &lat, uint64_t reference_seed) : lat_(lat) {
    auto rng = trial_rng(reference_seed, 0);
    PrepOutcome ref = run_bell_prep(lat, NoiseSpec{}, rng);
    s_ref_ = ref.s;
    rec_ref_ = rec(lat, s_ref_);
}

ClusterFrameSampler::Sample ClusterFrameSampler::sample(const PauliOp &error, std::mt19937_64 &rng) const {
    size_t n = lat_.num_qubits();
    if (error.num_qubits() != n) {
        throw std::invalid_argument("error must act on the whole cube");
    }
    BitVec r = random_bits(n, rng);
    PauliOp f = error;
    f.z ^= r;
    for (size_t u : r.ones()) {
        for (size_t v : lat_.neigh[u]) {
            f.x.flip(v);
        }
    }
    Sample out;
    out.s = s_ref_;
    for (size_t i = 0; i < lat_.region_a.size(); i++) {
        if (f.x.get(lat_.region_a[i])) {
            out.s.flip(i);
        }
    }
    out.frame_b = f.restricted(lat_.region_b);
    return out;
}

PauliOp ClusterFrameSampler::residual(const Sample &smp) const {
    PauliOp r = rec(lat_, smp.s) * smp.frame_b * rec_ref_;
    r.phase = 0;
    return r;
}

BellPrepStats bell_prep_experiment(const ClusterLattice &lat, const NoiseSpec &spec, uint64_t trials, uint64_t seed,
                                   int jobs) {
    spec.validate();
    ClusterFrameSampler sampler(lat, seed ^ 0x9e3779b97f4a7c15ULL);
    LayeredCliffordCircuit w = circuit_w(lat);
    size_t nb = lat.region_b.size();
    struct TrialOut {
        bool x_fail = false, z_fail = false, mismatch = false;
        size_t rep_weight = 0;
        std::vector<size_t> rep_z;
    };
    std::vector<TrialOut> outs(trials);
    parallel_for(trials, jobs, [&](size_t i) {
        auto rng = trial_rng(seed, i);
        PauliOp e = sample_merged_error(w, BitVec(), spec, rng);
        auto smp = sampler.sample(e, rng);
        BellClassification cls = classify_bell_residual(lat, sampler.residual(smp));
        RepairDiagnostics rd = diagnose_repair(lat, e, smp.s);
        BellClassification rep_cls = classify_bell_residual(lat, rd.rep);
        TrialOut &o = outs[i];
        o.x_fail = cls.x_flip;
        o.z_fail = cls.z_flip;
        o.mismatch = cls.syndrome != rep_cls.syndrome || cls.x_flip != rd.fail_x || cls.z_flip != rd.fail_z;
        o.rep_weight = rd.rep.weight();
        o.rep_z = rd.rep_z.z.ones();
    });
    BellPrepStats st;
    st.d = lat.d;
    st.p = std::max({spec.p_in, spec.p, spec.p_out});
    st.model = noise_model_name(spec.model);
    st.trials = trials;
    std::vector<uint64_t> marginal(nb, 0);
    double weight_sum = 0;
    for (const auto &o : outs) {
        st.logical_x_fail += o.x_fail;
        st.logical_z_fail += o.z_fail;
        st.logical_fail += o.x_fail || o.z_fail;
        st.cross_check_mismatches += o.mismatch;
        weight_sum += double(o.rep_weight);
        for (size_t q : o.rep_z) {
            marginal[q]++;
        }
    }
    if (trials > 0) {
        st.mean_rep_weight = weight_sum / double(trials);
        st.max_rep_z_marginal = double(*std::max_element(marginal.begin(), marginal.end())) / double(trials);
    }
    return st;
}

std::string bell_prep_csv(const std::vector<BellPrepStats> &rows) {
    std::ostringstream os;
    os.precision(10);
    os << "d,p,model,trials,logical_x_fail,logical_z_fail,mean_rep_weight\n";
    for (const auto &r : rows) {
        os << r.d << ',' << r.p << ',' << r.model << ',' << r.trials << ',' << r.logical_x_fail << ','
           << r.logical_z_fail << ',' << r.mean_rep_weight << '\n';
    }
    return os.str();
}

}  // namespace shallowsep
