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

#include "shallowsep/ft_pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "shallowsep/rng.h"
#include "shallowsep/tableau.h"

namespace shallowsep {

namespace {

/// Row-reduces bit strings over GF(2) and returns a basis of their span.
std::vector<BitVec> row_basis(std::vector<BitVec> rows) {
    std::vector<BitVec> basis;
    if (rows.empty()) {
        return basis;
    }
    size_t n = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); c++) {
        size_t p = r;
        while (p < rows.size() && !rows[p].get(c)) {
            p++;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[p], rows[r]);
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != r && rows[i].get(c)) {
                rows[i] ^= rows[r];
            }
        }
        r++;
    }
    rows.resize(r);
    return rows;
}

/// Copies a Pauli on the 2m B qubits of cube c onto the block qubits of the whole system.
void place_cube_pauli(const PauliOp &cube_b, int cube, size_t m, PauliOp &system, bool keep_phase) {
    for (int face = 0; face < 2; face++) {
        size_t off = size_t(cube_block(cube, face)) * m;
        for (size_t q = 0; q < m; q++) {
            size_t b = size_t(face) * m + q;
            if (cube_b.x.get(b)) {
                system.x.flip(off + q);
            }
            if (cube_b.z.get(b)) {
                system.z.flip(off + q);
            }
        }
    }
    if (keep_phase) {
        system.phase = (system.phase + cube_b.phase) & 3;
    }
}

double largest_rate(const NoiseSpec &spec) {
    if (spec.model == NoiseModel::None) {
        return 0;
    }
    return std::max({spec.p_in, spec.p, spec.p_out});
}

}  // namespace

NoiseSpec noise_at_locations(NoiseModel model, double p, const std::vector<std::string> &locations) {
    NoiseSpec spec;
    spec.model = model;
    for (const auto &loc : locations) {
        if (loc == "in") {
            spec.p_in = p;
        } else if (loc == "layer") {
            spec.p = p;
        } else if (loc == "out") {
            spec.p_out = p;
        } else {
            throw std::invalid_argument("unknown noise location: " + loc);
        }
    }
    spec.validate();
    return spec;
}

void FtConfig::validate() const {
    if (n < 2) {
        throw std::invalid_argument("n must be at least 2");
    }
    if (d < 2) {
        throw std::invalid_argument("d must be at least 2");
    }
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    noise.validate();
    if (instance && instance->n != n) {
        throw std::invalid_argument("instance size differs from n");
    }
    if (instance) {
        instance->z_in();
    }
}

std::string FtConfig::to_json() const {
    nlohmann::json noise_obj;
    noise_obj["model"] = noise_model_name(noise.model);
    double p = largest_rate(noise);
    std::vector<std::string> locs;
    bool uniform = true;
    for (auto [rate, name] : {std::pair{noise.p_in, "in"}, {noise.p, "layer"}, {noise.p_out, "out"}}) {
        if (rate > 0) {
            locs.push_back(name);
            uniform = uniform && rate == p;
        }
    }
    if (uniform) {
        noise_obj["p"] = p;
        noise_obj["locations"] = locs;
    } else {
        noise_obj["p_in"] = noise.p_in;
        noise_obj["p_layer"] = noise.p;
        noise_obj["p_out"] = noise.p_out;
    }
    nlohmann::json o = {{"n", n}, {"d", d}, {"noise", noise_obj}, {"trials", trials}, {"seed", seed}};
    if (instance) {
        o["instance"] = nlohmann::json::parse(instance->to_json());
    } else {
        o["instance"] = "random";
    }
    return o.dump();
}

FtConfig FtConfig::from_json(const std::string &text) {
    FtConfig cfg;
    try {
        auto o = nlohmann::json::parse(text);
        cfg.n = o.at("n").get<int>();
        cfg.d = o.at("d").get<int>();
        cfg.trials = o.value("trials", uint64_t{1});
        cfg.seed = o.value("seed", uint64_t{0});
        if (o.contains("noise")) {
            const auto &nz = o.at("noise");
            NoiseModel model = noise_model_from_name(nz.value("model", std::string("iid_depolarizing")));
            if (nz.contains("p")) {
                auto locs = nz.value("locations", std::vector<std::string>{"out"});
                cfg.noise = noise_at_locations(model, nz.at("p").get<double>(), locs);
            } else {
                cfg.noise.model = model;
                cfg.noise.p_in = nz.value("p_in", 0.0);
                cfg.noise.p = nz.value("p_layer", 0.0);
                cfg.noise.p_out = nz.value("p_out", 0.0);
            }
        }
        if (o.contains("instance") && !(o["instance"].is_string() && o["instance"] == "random")) {
            cfg.instance = MSPInstance::from_json(o["instance"].dump());
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("bad ft config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

LayeredCliffordCircuit bare_circuit_after_bell_prep(int n) {
    LayeredCliffordCircuit full = build_msp_controlled_circuit(n);
    LayeredCliffordCircuit out(full.num_qubits(), full.num_inputs());
    out.input_names = full.input_names;
    for (size_t t = 2; t < full.depth(); t++) {
        out.new_layer();
        out.mutable_layers().back() = full.layers()[t];
    }
    return out;
}

LayeredCliffordCircuit build_logical_circuit(int n, const SurfaceCodeLayout &layout) {
    LayeredCliffordCircuit bare = bare_circuit_after_bell_prep(n);
    size_t m = layout.m;
    LayeredCliffordCircuit out(bare.num_qubits() * m, bare.num_inputs());
    out.input_names = bare.input_names;
    for (const auto &layer : bare.layers()) {
        size_t depth = 0;
        for (const Gate &g : layer) {
            depth = std::max(depth, logical_gate_depth(g.kind));
        }
        size_t base = out.depth();
        for (size_t t = 0; t < depth; t++) {
            out.new_layer();
        }
        for (const Gate &g : layer) {
            auto sub = logical_gate_layers(layout, g.kind, uint32_t(g.q0 * m), uint32_t(g.q1 * m));
            for (size_t t = 0; t < sub.size(); t++) {
                for (Gate lg : sub[t]) {
                    lg.control = g.control;
                    out.mutable_layers()[base + t].push_back(lg);
                }
            }
        }
    }
    for (size_t block = 0; block < bare.num_qubits(); block++) {
        auto c = folded_coords(layout, int(block));
        out.coords.insert(out.coords.end(), c.begin(), c.end());
    }
    out.validate();
    return out;
}

LayeredCliffordCircuit build_logical_circuit(int n, const BitVec &z_in, const SurfaceCodeLayout &layout) {
    return build_logical_circuit(n, layout).resolved(z_in);
}

int cube_block(int cube, int face) {
    int i = cube / 2 + 1;
    int bare = 2 * i - 1 + face;
    return int(cube % 2 == 0 ? p_qubit(bare) : q_qubit(bare));
}

PauliOp system_recovery(const ClusterLattice &lat, int n, const std::vector<BitVec> &s_per_cube) {
    if (s_per_cube.size() != size_t(2 * n)) {
        throw std::invalid_argument("need one syndrome per cube");
    }
    size_t m = lat.code.m;
    PauliOp out(size_t(4 * n) * m);
    for (int c = 0; c < 2 * n; c++) {
        place_cube_pauli(rec(lat, s_per_cube[c]), c, m, out, false);
    }
    return out;
}

std::vector<BitVec> compute_f(const ClusterLattice &lat, const LayeredCliffordCircuit &logical, const BitVec &z_in,
                              const std::vector<BitVec> &s_per_cube) {
    size_t m = lat.code.m;
    int n = int(s_per_cube.size() / 2);
    if (logical.num_qubits() != size_t(4 * n) * m) {
        throw std::invalid_argument("logical circuit size does not match the number of cubes");
    }
    PauliOp r = conjugate_pauli(logical, z_in, system_recovery(lat, n, s_per_cube));
    std::vector<BitVec> f;
    for (int block = 0; block < 4 * n; block++) {
        f.push_back(r.x.slice(size_t(block) * m, m));
    }
    return f;
}

FtPipeline::FtPipeline(int n, int d, uint64_t reference_seed)
    : n_(n),
      lat_(build_cluster(d)),
      w_(circuit_w(lat_)),
      logical_(build_logical_circuit(n, lat_.code)),
      sampler_(lat_, reference_seed) {
    if (n < 2) {
        throw std::invalid_argument("n must be at least 2");
    }
}

std::shared_ptr<const FtPipeline::Reference> FtPipeline::reference(const BitVec &z_in) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = refs_.find(z_in);
        if (it != refs_.end()) {
            return it->second;
        }
    }
    size_t m = block_size();
    size_t nsys = logical_.num_qubits();
    std::vector<PauliOp> stabs;
    PauliOp rec_all(nsys);
    for (int c = 0; c < num_cubes(); c++) {
        for (const auto &g : lat_.bell_stabilizers) {
            PauliOp p(nsys);
            place_cube_pauli(g, c, m, p, true);
            stabs.push_back(p);
        }
        place_cube_pauli(sampler_.rec_ref(), c, m, rec_all, false);
    }
    StabilizerTableau t = StabilizerTableau::from_stabilizers(stabs);
    t.apply_pauli(rec_all);
    t.apply_circuit(logical_, z_in);
    auto ref = std::make_shared<Reference>();
    std::vector<BitVec> xs;
    for (const auto &s : t.stabilizers()) {
        xs.push_back(s.x);
    }
    ref->span = row_basis(std::move(xs));
    ref->y0 = BitVec(nsys);
    for (size_t q = 0; q < nsys; q++) {
        if (!t.measure_z_forced(q, false)) {
            ref->y0.set(q, true);
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return refs_.emplace(z_in, std::move(ref)).first->second;
}

FtPipeline::Draw FtPipeline::draw(const BitVec &z_in, const NoiseSpec &spec, std::mt19937_64 &rng) const {
    spec.validate();
    if (z_in.size() != size_t(4 * n_)) {
        throw std::invalid_argument("z_in must have 4n bits");
    }
    Draw dr;
    size_t na = lat_.region_a.size();
    size_t nsys = logical_.num_qubits();
    NoiseSpec cube_spec{spec.p_in, spec.p, 0, spec.model};
    dr.s = BitVec(na * size_t(num_cubes()));
    PauliOp frame_b(nsys);
    for (int c = 0; c < num_cubes(); c++) {
        dr.cube_errors.push_back(sample_merged_error(w_, BitVec(), cube_spec, rng));
        dr.frames.push_back(sampler_.sample(dr.cube_errors.back(), rng));
        BitVec flips(na);
        for (size_t t = 0; t < logical_.depth(); t++) {
            flips ^= sample_iid_pauli(na, spec.p, spec.model, rng).x;
        }
        flips ^= sample_iid_pauli(na, spec.p_out, spec.model, rng).x;
        dr.s.assign_slice(size_t(c) * na, dr.frames.back().s ^ flips);
        dr.idle_flips.push_back(std::move(flips));
        place_cube_pauli(dr.frames.back().frame_b, c, block_size(), frame_b, false);
    }
    dr.logical_error = sample_merged_error(logical_, z_in, NoiseSpec{0, spec.p, spec.p_out, spec.model}, rng);
    PauliOp total = conjugate_pauli(logical_, z_in, frame_b) * dr.logical_error;
    auto ref = reference(z_in);
    dr.y = ref->y0 ^ total.x;
    for (const auto &row : ref->span) {
        if (rng() & 1) {
            dr.y ^= row;
        }
    }
    return dr;
}

std::vector<BitVec> FtPipeline::split_s(const BitVec &s) const {
    size_t na = lat_.region_a.size();
    if (s.size() != na * size_t(num_cubes())) {
        throw std::invalid_argument("syndrome string has the wrong length");
    }
    std::vector<BitVec> out;
    for (int c = 0; c < num_cubes(); c++) {
        out.push_back(s.slice(size_t(c) * na, na));
    }
    return out;
}

BitVec FtPipeline::decode(const BitVec &z_in, const BitVec &s, const BitVec &y) const {
    size_t m = block_size();
    if (y.size() != logical_.num_qubits()) {
        throw std::invalid_argument("block measurement string has the wrong length");
    }
    auto f = compute_f(lat_, logical_, z_in, split_s(s));
    BitVec zq(size_t(4 * n_));
    for (int block = 0; block < 4 * n_; block++) {
        zq.set(block, dec(lat_.code, y.slice(size_t(block) * m, m) ^ f[block]));
    }
    return qubits_to_output(n_, zq);
}

FtTrialResult FtPipeline::run_trial(const BitVec &z_in, const NoiseSpec &spec, std::mt19937_64 &rng) const {
    Draw dr = draw(z_in, spec, rng);
    FtTrialResult r;
    r.z_in = z_in;
    r.s = std::move(dr.s);
    r.y = std::move(dr.y);
    r.f = compute_f(lat_, logical_, z_in, split_s(r.s));
    r.z = decode(z_in, r.s, r.y);
    r.pass = check_relation(z_in, r.z);
    return r;
}

uint64_t FtPipeline::masked_statistics_mismatches(const BitVec &z_in, const NoiseSpec &spec, uint64_t trials,
                                                  uint64_t seed) const {
    uint64_t bad = 0;
    size_t m = block_size();
    size_t nsys = logical_.num_qubits();
    size_t na = lat_.region_a.size();
    auto ref = reference(z_in);
    for (uint64_t i = 0; i < trials; i++) {
        auto rng = trial_rng(seed, i);
        Draw dr = draw(z_in, spec, rng);
        std::vector<BitVec> s_cubes = split_s(dr.s);
        std::vector<PauliOp> stabs;
        bool possible = true;
        for (int c = 0; c < num_cubes() && possible; c++) {
            StabilizerTableau t(lat_.num_qubits());
            t.apply_circuit(w_, BitVec());
            t.apply_pauli(dr.cube_errors[c]);
            BitVec measured = s_cubes[c] ^ dr.idle_flips[c];
            for (size_t a = 0; a < na && possible; a++) {
                possible = t.measure_z_forced(lat_.region_a[a], measured.get(a));
            }
            if (!possible) {
                break;
            }
            StabilizerTableau b = t.restricted_to(lat_.region_b);
            b.apply_pauli(rec(lat_, s_cubes[c]));
            for (const auto &g : b.stabilizers()) {
                PauliOp p(nsys);
                place_cube_pauli(g, c, m, p, true);
                stabs.push_back(p);
            }
        }
        if (!possible) {
            bad++;
            continue;
        }
        StabilizerTableau sys = StabilizerTableau::from_stabilizers(stabs);
        sys.apply_circuit(logical_, z_in);
        sys.apply_pauli(dr.logical_error);
        BitVec folded = dr.y;
        auto f = compute_f(lat_, logical_, z_in, s_cubes);
        for (int block = 0; block < 4 * n_; block++) {
            BitVec shifted = folded.slice(size_t(block) * m, m) ^ f[block];
            folded.assign_slice(size_t(block) * m, shifted);
        }
        std::vector<BitVec> xs;
        for (const auto &g : sys.stabilizers()) {
            xs.push_back(g.x);
        }
        if (!sys.support_contains(folded) || row_basis(std::move(xs)).size() != ref->span.size()) {
            bad++;
        }
    }
    return bad;
}

std::vector<FtTrialResult> run_ft_experiment(const FtPipeline &pipeline, const FtConfig &cfg, int jobs) {
    cfg.validate();
    if (cfg.n != pipeline.n() || cfg.d != pipeline.d()) {
        throw std::invalid_argument("config (n, d) differs from the pipeline");
    }
    std::vector<FtTrialResult> out(cfg.trials);
    parallel_for(cfg.trials, jobs, [&](size_t i) {
        auto rng = trial_rng(cfg.seed, i);
        MSPInstance inst = cfg.instance ? *cfg.instance : random_instance(cfg.n, rng);
        out[i] = pipeline.run_trial(inst.z_in(), cfg.noise, rng);
    });
    return out;
}

FtPointSummary random_guess_baseline(const FtPipeline &pipeline, const FtConfig &cfg, int jobs) {
    cfg.validate();
    std::vector<char> pass(cfg.trials, 0);
    parallel_for(cfg.trials, jobs, [&](size_t i) {
        auto rng = trial_rng(cfg.seed, i);
        MSPInstance inst = cfg.instance ? *cfg.instance : random_instance(cfg.n, rng);
        BitVec z_in = inst.z_in();
        FtTrialResult r = pipeline.run_trial(z_in, cfg.noise, rng);
        BitVec y = random_bits(r.y.size(), rng);
        pass[i] = check_relation(z_in, pipeline.decode(z_in, r.s, y));
    });
    FtPointSummary s{cfg.n, cfg.d, largest_rate(cfg.noise), cfg.trials, 0};
    for (char c : pass) {
        s.passes += uint64_t(c);
    }
    return s;
}

std::string ft_results_csv(const FtConfig &cfg, const std::vector<FtTrialResult> &results) {
    std::ostringstream os;
    os.precision(10);
    os << "seed,trial,n,d,p,pass,s_hash,z_hex\n";
    for (size_t i = 0; i < results.size(); i++) {
        char hash[17];
        std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(results[i].s.hash()));
        os << cfg.seed << ',' << i << ',' << cfg.n << ',' << cfg.d << ',' << largest_rate(cfg.noise) << ','
           << (results[i].pass ? 1 : 0) << ',' << hash << ',' << results[i].z.to_hex() << '\n';
    }
    return os.str();
}

ThresholdResult locate_threshold(const FtPipeline &pipeline, NoiseModel model,
                                 const std::vector<std::string> &locations, double target, double p_hi,
                                 int iterations, uint64_t trials, uint64_t seed, int jobs) {
    auto probe = [&](double p) {
        FtConfig cfg;
        cfg.n = pipeline.n();
        cfg.d = pipeline.d();
        cfg.noise = noise_at_locations(model, p, locations);
        cfg.trials = trials;
        cfg.seed = seed;
        FtPointSummary s{cfg.n, cfg.d, p, trials, 0};
        for (const auto &r : run_ft_experiment(pipeline, cfg, jobs)) {
            s.passes += r.pass;
        }
        return s;
    };
    ThresholdResult out;
    out.probes.push_back(probe(0));
    out.p_star = 0;
    out.pass_rate = out.probes.back().pass_rate();
    double lo = 0, hi = p_hi;
    for (int it = 0; it < iterations; it++) {
        double mid = 0.5 * (lo + hi);
        out.probes.push_back(probe(mid));
        if (out.probes.back().pass_rate() >= target) {
            lo = mid;
            out.p_star = mid;
            out.pass_rate = out.probes.back().pass_rate();
        } else {
            hi = mid;
        }
    }
    return out;
}

PipelineCircuit build_pipeline_circuit(int n, const ClusterLattice &lat) {
    LayeredCliffordCircuit logical = build_logical_circuit(n, lat.code);
    LayeredCliffordCircuit w = circuit_w(lat);
    size_t nc = lat.num_qubits();
    size_t m = lat.code.m;
    int cubes = 2 * n;
    PipelineCircuit out;
    out.circuit = LayeredCliffordCircuit(nc * size_t(cubes), logical.num_inputs());
    out.circuit.input_names = logical.input_names;
    out.cube_depth = w.depth();
    out.block_qubit.assign(logical.num_qubits(), 0);
    for (int c = 0; c < cubes; c++) {
        for (int face = 0; face < 2; face++) {
            size_t block = size_t(cube_block(c, face));
            for (size_t q = 0; q < m; q++) {
                out.block_qubit[block * m + q] = size_t(c) * nc + lat.region_b[size_t(face) * m + q];
            }
        }
    }
    for (const auto &layer : w.layers()) {
        out.circuit.new_layer();
        for (int c = 0; c < cubes; c++) {
            uint32_t off = uint32_t(size_t(c) * nc);
            for (Gate g : layer) {
                g.q0 += off;
                g.q1 += is_two_qubit(g.kind) ? off : 0;
                out.circuit.mutable_layers().back().push_back(g);
            }
        }
    }
    for (const auto &layer : logical.layers()) {
        out.circuit.new_layer();
        for (Gate g : layer) {
            g.q0 = uint32_t(out.block_qubit[g.q0]);
            if (is_two_qubit(g.kind)) {
                g.q1 = uint32_t(out.block_qubit[g.q1]);
            }
            out.circuit.mutable_layers().back().push_back(g);
        }
    }
    int r = lat.r;
    for (int c = 0; c < cubes; c++) {
        int kind = c % 2;
        int chain = c / 2;
        for (const Site &u : lat.sites) {
            int a = u[0] - 1, b = u[1];
            out.circuit.coords.push_back({std::max(a, b) + kind * r, std::min(a, b), chain * r + (u[2] - 1)});
        }
    }
    out.circuit.validate();
    return out;
}

int locality_audit(const LayeredCliffordCircuit &c) {
    if (c.coords.size() != c.num_qubits()) {
        throw std::invalid_argument("circuit has no coordinates for some qubits");
    }
    int best = 0;
    for (const auto &layer : c.layers()) {
        for (const Gate &g : layer) {
            if (!is_two_qubit(g.kind)) {
                continue;
            }
            const Coord &a = c.coords[g.q0];
            const Coord &b = c.coords[g.q1];
            best = std::max(best, std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]));
        }
    }
    return best;
}

}  // namespace shallowsep
