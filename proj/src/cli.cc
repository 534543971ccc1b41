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

#include "shallowsep/cli.h"

#include <spdlog/spdlog.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "shallowsep/bell_sampler.h"
#include "shallowsep/classical_analysis.h"
#include "shallowsep/cluster3d.h"
#include "shallowsep/decode_netlist.h"
#include "shallowsep/ft_pipeline.h"
#include "shallowsep/io.h"
#include "shallowsep/magic_square.h"
#include "shallowsep/rng.h"
#include "shallowsep/surface_code.h"

namespace shallowsep {

namespace {

using nlohmann::json;

struct Common {
    std::string config;
    std::string out;
    uint64_t seed = 1;
    int jobs = 1;
    bool check = false;
    CLI::Option *seed_opt = nullptr;
};

/// Optional JSON config whose keys mirror a subcommand's flags. A flag given on the command line wins.
class FlagConfig {
   public:
    FlagConfig(const std::string &path, const std::set<std::string> &allowed) {
        if (path.empty()) {
            return;
        }
        try {
            j_ = json::parse(read_file(path));
        } catch (const json::exception &e) {
            throw std::invalid_argument("bad config " + path + ": " + e.what());
        }
        if (!j_.is_object()) {
            throw std::invalid_argument("config must be a JSON object");
        }
        for (const auto &[key, value] : j_.items()) {
            if (!allowed.count(key)) {
                throw std::invalid_argument("unknown config key: " + key);
            }
        }
    }

    template <class T>
    void fill(const CLI::Option *opt, const std::string &key, T &target) const {
        if ((opt && opt->count() > 0) || !j_.contains(key)) {
            return;
        }
        try {
            target = j_.at(key).get<T>();
        } catch (const json::exception &e) {
            throw std::invalid_argument("bad value for config key " + key + ": " + e.what());
        }
    }

    template <class T>
    void fill_list(const CLI::Option *opt, const std::string &key, std::vector<T> &target) const {
        if ((opt && opt->count() > 0) || !j_.contains(key)) {
            return;
        }
        const json &v = j_.at(key);
        try {
            target = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
        } catch (const json::exception &e) {
            throw std::invalid_argument("bad value for config key " + key + ": " + e.what());
        }
    }

   private:
    json j_ = json::object();
};

void emit(const Common &c, const std::string &content) {
    if (!c.out.empty()) {
        write_file_atomic(c.out, content);
        log()->info("wrote {}", c.out);
    }
}

std::string fraction_str(const Fraction &f) { return std::to_string(f.num) + "/" + std::to_string(f.den); }

/// a - b > sigmas * sqrt(var_a + var_b) for two binomial rates.
bool clearly_greater(double a, uint64_t na, double b, uint64_t nb, double sigmas) {
    double var = a * (1 - a) / double(na) + b * (1 - b) / double(nb);
    return a - b > sigmas * std::sqrt(var);
}

void require_positive(const std::vector<int> &v, const char *what) {
    if (v.empty()) {
        throw std::invalid_argument(std::string(what) + " list is empty");
    }
    for (int x : v) {
        if (x < 1) {
            throw std::invalid_argument(std::string(what) + " must be positive");
        }
    }
}

// ---------------------------------------------------------------------------------------------------------------

struct GameValueCmd {
    int run(const Common &c, std::ostream &out) const {
        FlagConfig cfg(c.config, {});
        json params = json::array();
        bool all_eight_ninths = true;
        for (int mask = 0; mask < 16; mask++) {
            GameParams g;
            g.s = mask & 1 ? -1 : 1;
            g.t = mask & 2 ? -1 : 1;
            g.sp = mask & 4 ? -1 : 1;
            g.tp = mask & 8 ? -1 : 1;
            Fraction v = classical_game_value(g);
            all_eight_ninths = all_eight_ninths && v == Fraction{8, 9};
            params.push_back({{"s", g.s}, {"t", g.t}, {"sp", g.sp}, {"tp", g.tp}, {"value", fraction_str(v)}});
        }
        json per_input = json::array();
        for (int a = 1; a <= 3; a++) {
            for (int b = 1; b <= 3; b++) {
                GameInput ga{uint8_t(a)}, gb{uint8_t(b)};
                per_input.push_back({{"alpha", ga.str()},
                                     {"beta", gb.str()},
                                     {"value", fraction_str(classical_game_value_single(ga, gb))}});
            }
        }
        Fraction standard = classical_game_value();
        json summary = {{"value", fraction_str(standard)}, {"params", params}, {"per_input", per_input}};
        emit(c, summary.dump(2) + "\n");
        out << fraction_str(standard) << "\n";
        bool ok = standard == Fraction{8, 9} && all_eight_ninths;
        return c.check && !ok ? kExitAssertFailed : kExitOk;
    }
};

struct MspCheckCmd {
    std::vector<int> n{4, 8, 16};
    uint64_t trials = 1000;
    CLI::Option *n_opt = nullptr, *trials_opt = nullptr;

    void add(CLI::App *app) {
        n_opt = app->add_option("--n", n, "Problem sizes")->delimiter(',');
        trials_opt = app->add_option("--trials", trials, "Random instances per size");
    }

    int run(const Common &c, std::ostream &out) {
        FlagConfig cfg(c.config, {"n", "trials"});
        cfg.fill_list(n_opt, "n", n);
        cfg.fill(trials_opt, "trials", trials);
        for (int x : n) {
            if (x < 2) {
                throw std::invalid_argument("n must be at least 2");
            }
        }
        std::vector<MspCheckSummary> rows;
        uint64_t failures = 0;
        for (int x : n) {
            rows.push_back(msp_check(x, trials, c.seed, c.jobs));
            failures += rows.back().relation_failures + rows.back().stst_failures;
        }
        emit(c, msp_check_csv(rows));
        out << "msp-check: " << rows.size() << " sizes x " << trials << " instances, " << failures << " failures\n";
        return c.check && failures > 0 ? kExitAssertFailed : kExitOk;
    }
};

struct ScThresholdCmd {
    std::vector<int> d{3, 5, 7};
    double q = 0.01;
    uint64_t trials = 100000;
    CLI::Option *d_opt = nullptr, *q_opt = nullptr, *trials_opt = nullptr;

    void add(CLI::App *app) {
        d_opt = app->add_option("--d", d, "Code distances")->delimiter(',');
        q_opt = app->add_option("--q", q, "iid X flip rate");
        trials_opt = app->add_option("--trials", trials, "Trials per distance");
    }

    int run(const Common &c, std::ostream &out) {
        FlagConfig cfg(c.config, {"d", "q", "trials"});
        cfg.fill_list(d_opt, "d", d);
        cfg.fill(q_opt, "q", q);
        cfg.fill(trials_opt, "trials", trials);
        require_positive(d, "d");
        if (!(q >= 0 && q <= 1) || trials == 0) {
            throw std::invalid_argument("need 0 <= q <= 1 and trials > 0");
        }
        std::vector<MemoryEstimate> rows;
        std::ostringstream line;
        line << "sc-threshold q=" << q << ":";
        for (int x : d) {
            rows.push_back(memory_failure_rate(build_layout(x), q, trials, c.seed, c.jobs));
            line << " d=" << x << " rate=" << rows.back().rate;
        }
        emit(c, memory_csv(rows));
        bool decreasing = true;
        for (size_t i = 1; i < rows.size(); i++) {
            decreasing = decreasing && clearly_greater(rows[i - 1].rate, rows[i - 1].trials, rows[i].rate,
                                                       rows[i].trials, 3.0);
        }
        line << (decreasing ? " (strictly decreasing at 3 sigma)" : " (not strictly decreasing at 3 sigma)");
        out << line.str() << "\n";
        return c.check && !decreasing ? kExitAssertFailed : kExitOk;
    }
};

struct BellPrepCmd {
    std::vector<int> d{3, 4, 5};
    std::vector<double> p{0.01};
    std::string model = "iid_depolarizing";
    std::vector<std::string> locations{"out"};
    uint64_t trials = 10000;
    CLI::Option *d_opt = nullptr, *p_opt = nullptr, *model_opt = nullptr, *loc_opt = nullptr,
                *trials_opt = nullptr;

    void add(CLI::App *app) {
        d_opt = app->add_option("--d", d, "Code distances")->delimiter(',');
        p_opt = app->add_option("--p", p, "Noise rates")->delimiter(',');
        model_opt = app->add_option("--model", model, "iid_depolarizing, iid_xz or iid_x");
        loc_opt = app->add_option("--locations", locations, "Subset of in,layer,out")->delimiter(',');
        trials_opt = app->add_option("--trials", trials, "Trials per point");
    }

    int run(const Common &c, std::ostream &out) {
        FlagConfig cfg(c.config, {"d", "p", "model", "locations", "trials"});
        cfg.fill_list(d_opt, "d", d);
        cfg.fill_list(p_opt, "p", p);
        cfg.fill(model_opt, "model", model);
        cfg.fill_list(loc_opt, "locations", locations);
        cfg.fill(trials_opt, "trials", trials);
        require_positive(d, "d");
        NoiseModel nm = noise_model_from_name(model);
        std::vector<BellPrepStats> rows;
        uint64_t mismatches = 0;
        bool decreasing = true;
        std::ostringstream line;
        line << "bell-prep " << model << ":";
        for (double rate : p) {
            NoiseSpec spec = noise_at_locations(nm, rate, locations);
            for (size_t i = 0; i < d.size(); i++) {
                rows.push_back(bell_prep_experiment(build_cluster(d[i]), spec, trials, c.seed, c.jobs));
                const BellPrepStats &r = rows.back();
                mismatches += r.cross_check_mismatches;
                line << " (d=" << d[i] << ",p=" << rate << ") fail=" << r.logical_fail << "/" << r.trials;
                if (i > 0) {
                    const BellPrepStats &prev = rows[rows.size() - 2];
                    decreasing = decreasing && clearly_greater(double(prev.logical_fail) / double(prev.trials),
                                                               prev.trials, double(r.logical_fail) / double(r.trials),
                                                               r.trials, 3.0);
                }
            }
        }
        emit(c, bell_prep_csv(rows));
        line << "; cross-check mismatches " << mismatches << "; "
             << (decreasing ? "decreasing in d at 3 sigma" : "not decreasing in d at 3 sigma");
        out << line.str() << "\n";
        return c.check && (mismatches > 0 || !decreasing) ? kExitAssertFailed : kExitOk;
    }
};

struct FtSweepCmd {
    int run(const Common &c, std::ostream &out) const {
        if (c.config.empty()) {
            throw std::invalid_argument("ft-sweep needs --config");
        }
        json sweep;
        try {
            sweep = json::parse(read_file(c.config));
        } catch (const json::exception &e) {
            throw std::invalid_argument("bad config " + c.config + ": " + e.what());
        }
        if (!sweep.is_object() || !sweep.contains("d")) {
            throw std::invalid_argument("sweep config needs n, d and noise");
        }
        for (const auto &[key, value] : sweep.items()) {
            static const std::set<std::string> allowed = {"n", "d", "noise", "instance", "trials", "seed"};
            if (!allowed.count(key)) {
                throw std::invalid_argument("unknown config key: " + key);
            }
        }
        auto as_list = [](const json &v) { return v.is_array() ? v : json::array({v}); };
        json ds = as_list(sweep["d"]);
        json ps = sweep.contains("noise") && sweep["noise"].contains("p") ? as_list(sweep["noise"]["p"])
                                                                          : json::array({nullptr});
        std::string csv;
        std::ostringstream line;
        line << "ft-sweep:";
        bool ok = true;
        for (const json &dv : ds) {
            std::unique_ptr<FtPipeline> pipeline;
            std::vector<FtPointSummary> points;
            for (const json &pv : ps) {
                json one = sweep;
                one["d"] = dv;
                if (!pv.is_null()) {
                    one["noise"]["p"] = pv;
                }
                if (c.seed_opt->count() > 0) {
                    one["seed"] = c.seed;
                }
                FtConfig cfg = FtConfig::from_json(one.dump());
                if (!pipeline) {
                    pipeline = std::make_unique<FtPipeline>(cfg.n, cfg.d);
                }
                auto results = run_ft_experiment(*pipeline, cfg, c.jobs);
                std::string part = ft_results_csv(cfg, results);
                csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
                FtPointSummary s{cfg.n, cfg.d, pv.is_null() ? 0.0 : pv.get<double>(), results.size(), 0};
                for (const auto &r : results) {
                    s.passes += r.pass;
                }
                if (cfg.noise.is_noiseless() && s.passes != s.trials) {
                    ok = false;
                }
                for (const auto &prev : points) {
                    if (prev.p < s.p && clearly_greater(s.pass_rate(), s.trials, prev.pass_rate(), prev.trials, 3.0)) {
                        ok = false;
                    }
                }
                points.push_back(s);
                line << " (d=" << s.d << ",p=" << s.p << ") " << s.passes << "/" << s.trials;
                log()->info("d={} p={} pass rate {}", s.d, s.p, s.pass_rate());
            }
        }
        emit(c, csv);
        out << line.str() << "\n";
        return c.check && !ok ? kExitAssertFailed : kExitOk;
    }
};

struct DecodeNetlistCmd {
    int n = 2;
    int d = 3;
    uint64_t trials = 100;
    double p = 0.01;
    CLI::Option *n_opt = nullptr, *d_opt = nullptr, *trials_opt = nullptr, *p_opt = nullptr;

    void add(CLI::App *app) {
        n_opt = app->add_option("--n", n, "Problem size");
        d_opt = app->add_option("--d", d, "Code distance");
        trials_opt = app->add_option("--trials", trials, "Noisy trials used to cross-check against the pipeline");
        p_opt = app->add_option("--p", p, "Depolarizing rate at every location for the cross-check");
    }

    int run(const Common &c, std::ostream &out) {
        FlagConfig cfg(c.config, {"n", "d", "trials", "p"});
        cfg.fill(n_opt, "n", n);
        cfg.fill(d_opt, "d", d);
        cfg.fill(trials_opt, "trials", trials);
        cfg.fill(p_opt, "p", p);
        FtPipeline pipeline(n, d);
        DecodeNetlist net = build_decode_netlist(pipeline);
        auto ev = decode_netlist_evaluator(pipeline);
        NoiseSpec spec = noise_at_locations(NoiseModel::IidDepolarizing, p, {"in", "layer", "out"});
        uint64_t mismatches = 0;
        for (uint64_t i = 0; i < trials; i++) {
            auto rng = trial_rng(c.seed, i);
            BitVec z_in = random_bits(size_t(4 * n), rng);
            FtTrialResult r = pipeline.run_trial(z_in, spec, rng);
            mismatches += net.dag.evaluate(decode_netlist_inputs(z_in, r.s, r.y), ev) != r.z;
        }
        emit(c, net.dag.to_json() + "\n");
        int depth = net.dag.depth();
        int fan_in = net.dag.max_fan_in();
        out << "decode-netlist n=" << n << " d=" << d << ": " << net.dag.gates.size() << " gates, depth " << depth
            << " (D+3 = " << net.logical_depth + 3 << "), max fan-in " << fan_in << " (bound "
            << net.fan_in_bound() << "), " << mismatches << "/" << trials << " mismatches against the pipeline\n";
        bool ok = depth == net.logical_depth + 3 && fan_in <= net.fan_in_bound() && mismatches == 0;
        return c.check && !ok ? kExitAssertFailed : kExitOk;
    }
};

struct LightconeCmd {
    int run(const Common &c, std::ostream &out) const {
        if (c.config.empty()) {
            throw std::invalid_argument("lightcone needs --config pointing at a JSON netlist");
        }
        BooleanDag dag = BooleanDag::from_json(read_file(c.config));
        auto cones = all_backward_lightcones(dag);
        int depth = dag.depth();
        int fan_in = dag.max_fan_in();
        double cap = std::pow(double(std::max(fan_in, 1)), double(depth));
        size_t largest = 0;
        std::ostringstream csv;
        csv << "output,name,cone_size\n";
        for (size_t o = 0; o < cones.size(); o++) {
            largest = std::max(largest, cones[o].popcount());
            csv << o << ',' << (o < dag.output_names.size() ? dag.output_names[o] : "") << ','
                << cones[o].popcount() << '\n';
        }
        emit(c, csv.str());
        bool ok = double(largest) <= cap;
        out << "lightcone: " << cones.size() << " outputs, depth " << depth << ", max fan-in " << fan_in
            << ", largest backward cone " << largest << " (K^D = " << cap << ")";
        try {
            MspLabels::from_dag(dag);
            double pr = event_ec_probability(dag);
            double bound = event_ec_bound(int(MspLabels::from_dag(dag).n), fan_in, depth);
            ok = ok && pr >= bound;
            out << ", Pr[E_C] " << pr << " (bound " << bound << ")";
        } catch (const std::invalid_argument &) {
            // Not labeled as a Magic Square solver; only the cone sizes apply.
        }
        out << "\n";
        return c.check && !ok ? kExitAssertFailed : kExitOk;
    }
};

struct AuditLocalityCmd {
    int n = 3;
    int d = 3;
    CLI::Option *n_opt = nullptr, *d_opt = nullptr;

    void add(CLI::App *app) {
        n_opt = app->add_option("--n", n, "Problem size");
        d_opt = app->add_option("--d", d, "Code distance");
    }

    int run(const Common &c, std::ostream &out) {
        FlagConfig cfg(c.config, {"n", "d"});
        cfg.fill(n_opt, "n", n);
        cfg.fill(d_opt, "d", d);
        if (n < 2) {
            throw std::invalid_argument("n must be at least 2");
        }
        ClusterLattice lat = build_cluster(d);
        int diameter = locality_audit(build_pipeline_circuit(n, lat).circuit);
        int reference = n == 2 ? diameter : locality_audit(build_pipeline_circuit(2, lat).circuit);
        int cube = locality_audit(circuit_w(lat));
        json summary = {{"n", n}, {"d", d}, {"metric", "manhattan"}, {"diameter", diameter},
                        {"diameter_n2", reference}, {"cube_diameter", cube}};
        emit(c, summary.dump(2) + "\n");
        out << "audit-locality n=" << n << " d=" << d << ": max gate diameter " << diameter << " (n=2: " << reference
            << ", one cube: " << cube << ")\n";
        return c.check && diameter != reference ? kExitAssertFailed : kExitOk;
    }
};

/// CLI11 needs a C-style argv; it keeps pointers into these strings only while parsing.
std::vector<const char *> make_argv(const std::vector<std::string> &args) {
    std::vector<const char *> argv{"shallowsep"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return argv;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Shallow-circuit separation experiments"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Common common;
    common.jobs = std::max(1, int(std::thread::hardware_concurrency()));
    app.add_option("--config", common.config, "JSON config");
    app.add_option("--out", common.out, "Output file (CSV or JSON), written atomically");
    common.seed_opt = app.add_option("--seed", common.seed, "Base seed (default 1)");
    app.add_option("--jobs", common.jobs, "Worker threads (default: logical cores)")->check(CLI::PositiveNumber);
    app.add_flag("--assert", common.check, "Exit 3 when the run's acceptance check fails");

    GameValueCmd game_value;
    MspCheckCmd msp;
    ScThresholdCmd sc;
    BellPrepCmd bell;
    FtSweepCmd sweep;
    DecodeNetlistCmd netlist;
    LightconeCmd lightcone;
    AuditLocalityCmd audit;
    std::map<std::string, std::function<int()>> dispatch;
    auto sub = [&](const char *name, const char *help, std::function<int()> fn) {
        CLI::App *s = app.add_subcommand(name, help);
        dispatch[name] = std::move(fn);
        return s;
    };
    sub("game-value", "Classical value of the magic square game", [&] { return game_value.run(common, out); });
    msp.add(sub("msp-check", "Noiseless 1D Magic Square circuit on random instances",
                [&] { return msp.run(common, out); }));
    sc.add(sub("sc-threshold", "Surface-code memory failure rate under iid X noise",
               [&] { return sc.run(common, out); }));
    bell.add(sub("bell-prep", "Noisy single-shot Bell preparation", [&] { return bell.run(common, out); }));
    sub("ft-sweep", "Fault-tolerant pipeline over a grid of d and p", [&] { return sweep.run(common, out); });
    netlist.add(sub("decode-netlist", "Emit the classical decode circuit as a JSON netlist",
                    [&] { return netlist.run(common, out); }));
    sub("lightcone", "Lightcone statistics of a JSON netlist", [&] { return lightcone.run(common, out); });
    audit.add(sub("audit-locality", "Largest gate diameter of the embedded pipeline",
                  [&] { return audit.run(common, out); }));

    auto argv = make_argv(args);
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    try {
        return dispatch.at(app.get_subcommands().front()->get_name())();
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::invalid_argument &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    }
}

}  // namespace shallowsep
