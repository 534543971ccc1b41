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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "json.hpp"
#include "shallowsep/classical_analysis.h"
#include "shallowsep/io.h"

using namespace shallowsep;
namespace fs = std::filesystem;

namespace {

class TempDir {
   public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("shallowsep_cli_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    std::string file(const std::string &name) const { return (path_ / name).string(); }

   private:
    fs::path path_;
};

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(io, atomic_write_replaces_and_leaves_no_temp_files) {
    TempDir dir;
    std::string path = dir.file("x.txt");
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    EXPECT_EQ(read_file(path), "second\n");
    size_t entries = 0;
    for (const auto &e : fs::directory_iterator(fs::path(path).parent_path())) {
        (void)e;
        entries++;
    }
    EXPECT_EQ(entries, 1u);
    EXPECT_THROW(write_file_atomic(dir.file("missing/x.txt"), "x"), IoError);
    EXPECT_THROW(read_file(dir.file("nope")), IoError);
}

TEST(io, csv_parsing) {
    CsvTable t = parse_csv("a,b,c\n1,2,3\r\n\n4,,6\n");
    EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[1][t.column("b")], "");
    EXPECT_EQ(t.rows[1][t.column("c")], "6");
    EXPECT_THROW(t.column("z"), std::invalid_argument);
    EXPECT_THROW(parse_csv(""), std::invalid_argument);
    EXPECT_THROW(parse_csv("a,b\n1,2,3\n"), std::invalid_argument);
}

TEST(cli, game_value) {
    TempDir dir;
    CliRun r = cli({"game-value", "--out", dir.file("gv.json"), "--assert"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "8/9\n");
    auto j = nlohmann::json::parse(read_file(dir.file("gv.json")));
    EXPECT_EQ(j["value"], "8/9");
    EXPECT_EQ(j["params"].size(), 16u);
    EXPECT_EQ(j["per_input"].size(), 9u);
}

TEST(cli, exit_codes_for_bad_usage) {
    TempDir dir;
    EXPECT_EQ(cli({}).code, kExitConfigError);
    EXPECT_EQ(cli({"no-such-command"}).code, kExitConfigError);
    EXPECT_EQ(cli({"sc-threshold", "--q", "abc"}).code, kExitConfigError);
    EXPECT_EQ(cli({"sc-threshold", "--q", "2", "--trials", "10"}).code, kExitConfigError);
    EXPECT_EQ(cli({"game-value", "--jobs", "0"}).code, kExitConfigError);
    EXPECT_EQ(cli({"ft-sweep"}).code, kExitConfigError);
    EXPECT_EQ(cli({"lightcone", "--config", dir.file("absent.json")}).code, kExitIoError);
    EXPECT_EQ(cli({"game-value", "--out", dir.file("no/such/dir/gv.json")}).code, kExitIoError);
    CliRun help = cli({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_NE(help.out.find("ft-sweep"), std::string::npos);
}

TEST(cli, config_keys_mirror_flags) {
    TempDir dir;
    write_file_atomic(dir.file("sc.json"), R"({"d": [3], "q": 0.02, "trials": 500})");
    CliRun r = cli({"sc-threshold", "--config", dir.file("sc.json"), "--out", dir.file("sc.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    CsvTable t = parse_csv(read_file(dir.file("sc.csv")));
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][t.column("q")], "0.02");
    EXPECT_EQ(t.rows[0][t.column("trials")], "500");
    // The flag wins over the config.
    r = cli({"sc-threshold", "--config", dir.file("sc.json"), "--trials", "300", "--out", dir.file("sc.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    t = parse_csv(read_file(dir.file("sc.csv")));
    EXPECT_EQ(t.rows[0][t.column("trials")], "300");
    write_file_atomic(dir.file("bad.json"), R"({"d": [3], "qq": 0.02})");
    EXPECT_EQ(cli({"sc-threshold", "--config", dir.file("bad.json")}).code, kExitConfigError);
    write_file_atomic(dir.file("broken.json"), "{");
    EXPECT_EQ(cli({"sc-threshold", "--config", dir.file("broken.json")}).code, kExitConfigError);
}

TEST(cli, sc_threshold_assert) {
    TempDir dir;
    CliRun good = cli({"sc-threshold", "--d", "3,5", "--q", "0.02", "--trials", "20000", "--seed", "3", "--assert"});
    EXPECT_EQ(good.code, kExitOk) << good.out;
    // Far above threshold the larger code is worse, so the assertion fails.
    CliRun bad = cli({"sc-threshold", "--d", "3,5", "--q", "0.3", "--trials", "2000", "--assert"});
    EXPECT_EQ(bad.code, kExitAssertFailed) << bad.out;
    CliRun no_assert = cli({"sc-threshold", "--d", "3,5", "--q", "0.3", "--trials", "2000"});
    EXPECT_EQ(no_assert.code, kExitOk);
}

TEST(cli, msp_check) {
    TempDir dir;
    CliRun r = cli({"msp-check", "--n", "4,8", "--trials", "100", "--assert", "--out", dir.file("msp.csv")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    CsvTable t = parse_csv(read_file(dir.file("msp.csv")));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[1][t.column("n")], "8");
    EXPECT_EQ(t.rows[1][t.column("relation_failures")], "0");
}

TEST(cli, bell_prep_csv) {
    TempDir dir;
    CliRun r = cli({"bell-prep", "--d", "3", "--p", "0.01,0.02", "--trials", "300", "--out", dir.file("bp.csv")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    CsvTable t = parse_csv(read_file(dir.file("bp.csv")));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][t.column("model")], "iid_depolarizing");
    EXPECT_EQ(cli({"bell-prep", "--model", "nonsense", "--trials", "1"}).code, kExitConfigError);
}

TEST(cli, ft_sweep_reproducible) {
    TempDir dir;
    write_file_atomic(dir.file("sweep.json"), R"({"n": 2, "d": [2, 3],
        "noise": {"model": "iid_depolarizing", "p": [0, 0.02], "locations": ["out"]},
        "instance": "random", "trials": 40, "seed": 5})");
    std::vector<std::string> base = {"ft-sweep", "--config", dir.file("sweep.json"), "--assert"};
    auto with = [&](std::vector<std::string> extra) {
        std::vector<std::string> a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return cli(a);
    };
    CliRun a = with({"--out", dir.file("a.csv"), "--jobs", "1"});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    CliRun b = with({"--out", dir.file("b.csv"), "--jobs", "3"});
    ASSERT_EQ(b.code, kExitOk) << b.err;
    EXPECT_EQ(read_file(dir.file("a.csv")), read_file(dir.file("b.csv")));
    CsvTable t = parse_csv(read_file(dir.file("a.csv")));
    EXPECT_EQ(t.header, (std::vector<std::string>{"seed", "trial", "n", "d", "p", "pass", "s_hash", "z_hex"}));
    EXPECT_EQ(t.rows.size(), 2u * 2u * 40u);
    EXPECT_EQ(t.rows[0][t.column("seed")], "5");
    CliRun c = with({"--out", dir.file("c.csv"), "--seed", "6"});
    ASSERT_EQ(c.code, kExitOk);
    EXPECT_NE(read_file(dir.file("c.csv")), read_file(dir.file("a.csv")));
    EXPECT_EQ(parse_csv(read_file(dir.file("c.csv"))).rows[0][0], "6");
    write_file_atomic(dir.file("bad.json"), R"({"n": 2, "d": 3, "extra": 1})");
    EXPECT_EQ(cli({"ft-sweep", "--config", dir.file("bad.json")}).code, kExitConfigError);
    write_file_atomic(dir.file("bad2.json"), R"({"n": 1, "d": 3})");
    EXPECT_EQ(cli({"ft-sweep", "--config", dir.file("bad2.json")}).code, kExitConfigError);
}

TEST(cli, decode_netlist_feeds_lightcone) {
    TempDir dir;
    CliRun r = cli({"decode-netlist", "--n", "2", "--d", "2", "--trials", "30", "--assert", "--out",
                 dir.file("net.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("depth 14 (D+3 = 14)"), std::string::npos) << r.out;
    BooleanDag dag = BooleanDag::from_json(read_file(dir.file("net.json")));
    EXPECT_EQ(dag.depth(), 14);
    CliRun lc = cli({"lightcone", "--config", dir.file("net.json"), "--assert", "--out", dir.file("cones.csv")});
    ASSERT_EQ(lc.code, kExitOk) << lc.err;
    CsvTable t = parse_csv(read_file(dir.file("cones.csv")));
    EXPECT_EQ(t.rows.size(), 8u);
    EXPECT_EQ(t.rows[0][t.column("name")], "x1.1");
}

TEST(cli, lightcone_on_msp_labels) {
    TempDir dir;
    std::mt19937_64 rng(1);
    write_file_atomic(dir.file("dag.json"), random_msp_dag(400, 1, 2, rng).to_json());
    CliRun r = cli({"lightcone", "--config", dir.file("dag.json"), "--assert"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("Pr[E_C]"), std::string::npos);
    write_file_atomic(dir.file("cyclic.json"),
                      R"({"inputs": ["a"], "gates": [{"kind": "not", "inputs": [2], "output": 1},
                          {"kind": "not", "inputs": [1], "output": 2}], "outputs": [2]})");
    EXPECT_EQ(cli({"lightcone", "--config", dir.file("cyclic.json")}).code, kExitConfigError);
}

TEST(cli, audit_locality) {
    TempDir dir;
    CliRun r = cli({"audit-locality", "--n", "3", "--d", "2", "--assert", "--out", dir.file("loc.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(read_file(dir.file("loc.json")));
    EXPECT_EQ(j["diameter"], 3);
    EXPECT_EQ(j["diameter_n2"], 3);
    EXPECT_EQ(j["cube_diameter"], 1);
}
