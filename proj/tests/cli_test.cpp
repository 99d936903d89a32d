// Copyright 2026 The qrecsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrecsim/cli.hpp"

using namespace qrecsim;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const std::string kTable = std::string(QRECSIM_DATA_DIR) + "/bundled_table.csv";
const fs::path kGolden = fs::path(QRECSIM_TEST_DIR) / "golden";

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &tag)
        : path(fs::temp_directory_path() / ("qrecsim_" + tag + "_" + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string file(const std::string &name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("gatecount prints the three counts") {
    const auto r = cli({"gatecount", "--l", "6", "--n", "16", "--c", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"o1\":132,\"o2\":20,\"o3\":45}\n");
    CHECK(r.out == slurp(kGolden / "gatecount_l6_n16_c0.json"));
    CHECK(cli({"gatecount", "--l", "6", "--n", "16"}).out == "{\"o1\":132,\"o2\":20,\"o3\":65}\n");
}

TEST_CASE("predict on the two-record example") {
    TempDir dir("predict");
    std::ofstream(dir.file("t.csv")) << "id,feature\n0,00\n1,11\n";
    const auto r = cli({"predict", "--db", dir.file("t.csv"), "--feature", "00"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["c0"]["p_zero"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["c0"]["expected_attempts"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("golden outputs on the bundled table") {
    const auto predict = cli({"predict", "--db", kTable, "--feature", "101011", "--top-k", "2", "--iterations", "peak"});
    CHECK(predict.code == 0);
    CHECK(predict.out == slurp(kGolden / "predict_top2_peak.json"));

    TempDir dir("export");
    const auto r = cli({"export-circuit", "--db", kTable, "--feature", "101011", "--stage", "knn", "--out",
                        dir.file("knn.txt")});
    CHECK(r.code == 0);
    CHECK(slurp(dir.path / "knn.txt") == slurp(kGolden / "knn_stage.txt"));
    for (const char *stage : {"init", "grover"}) {
        CHECK(cli({"export-circuit", "--db", kTable, "--feature", "101011", "--stage", stage, "--out",
                   dir.file(std::string(stage) + ".txt")})
                  .code == 0);
        CHECK(fs::file_size(dir.path / (std::string(stage) + ".txt")) > 0);
    }
}

TEST_CASE("recommend --exact matches predict") {
    const auto rec = cli({"recommend", "--db", kTable, "--feature", "101011", "--exact", "--marked", "101011"});
    const auto pre = cli({"predict", "--db", kTable, "--feature", "101011", "--marked", "101011"});
    REQUIRE(rec.code == 0);
    REQUIRE(pre.code == 0);
    const auto a = nlohmann::json::parse(rec.out);
    const auto b = nlohmann::json::parse(pre.out);
    for (std::size_t s = 0; s < 3; ++s) {
        const auto &da = a["stages"][s]["distribution"];
        const auto &db = b["stages"][s]["distribution"];
        REQUIRE(da.size() == db.size());
        for (std::size_t i = 0; i < da.size(); ++i) {
            CHECK(da[i]["id"] == db[i]["id"]);
            CHECK(std::abs(da[i]["p"].get<double>() - db[i]["p"].get<double>()) < 1e-10);
        }
    }
}

TEST_CASE("recommend is byte-identical across invocations and honours the seed variable") {
    const std::vector<std::string> args{"recommend", "--db", kTable, "--feature", "101011", "--shots", "200",
                                        "--seed", "3"};
    const auto a = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == cli(args).out);
    ::setenv("QRECSIM_SEED", "3", 1);
    const auto env = cli({"recommend", "--db", kTable, "--feature", "101011", "--shots", "200"});
    ::unsetenv("QRECSIM_SEED");
    CHECK(env.out == a.out);
    const auto other = cli({"recommend", "--db", kTable, "--feature", "101011", "--shots", "200", "--seed", "4"});
    CHECK(other.out != a.out);
}

TEST_CASE("stage dumps and reproduce write their files") {
    TempDir dir("dumps");
    const auto r = cli({"recommend", "--db", kTable, "--feature", "101011", "--top-k", "1", "--shots", "50",
                        "--stage-dumps", dir.file("d")});
    CHECK(r.code == 0);
    for (const char *name : {"post_init.csv", "post_knn.csv", "post_grover.csv", "post_knn_state.csv",
                             "trajectory.csv"}) {
        CHECK(fs::exists(dir.path / "d" / name));
    }
    const auto rep = cli({"reproduce", "--case", "two", "--out", dir.file("two")});
    CHECK(rep.code == 0);
    for (const char *name : {"post_knn.csv", "post_grover_t1.csv", "post_grover_final.csv", "trajectory.csv",
                             "report.json"}) {
        CHECK(fs::exists(dir.path / "two" / name));
    }
    CHECK(slurp(dir.path / "two" / "post_knn.csv").rfind("id,feature,p\n", 0) == 0);
}

TEST_CASE("errors map to exit codes without partial output") {
    TempDir dir("errors");
    std::ofstream(dir.file("empty.csv")) << "";
    std::ofstream(dir.file("bad.csv")) << "id,feature\n0,10\n1,1x\n";
    std::ofstream(dir.file("far.csv")) << "id,feature\n0,11\n1,11\n";

    for (const auto &db : {dir.file("empty.csv"), dir.file("bad.csv"), dir.file("missing.csv")}) {
        const auto v = cli({"validate", "--db", db});
        CHECK(v.code == 1);
        CHECK(v.out.empty());
        CHECK(v.err.find('\n') == v.err.size() - 1);
        CHECK(cli({"predict", "--db", db, "--feature", "00"}).code == 1);
        CHECK(cli({"recommend", "--db", db, "--feature", "00", "--stage-dumps", dir.file("never")}).code == 1);
        CHECK(cli({"export-circuit", "--db", db, "--feature", "00", "--stage", "knn", "--out",
                   dir.file("never.txt")})
                  .code == 1);
    }
    CHECK_FALSE(fs::exists(dir.path / "never"));
    CHECK_FALSE(fs::exists(dir.path / "never.txt"));

    const auto bad = cli({"validate", "--db", dir.file("bad.csv")});
    CHECK(bad.err.find("line 3") != std::string::npos);

    const auto exhausted = cli({"recommend", "--db", dir.file("far.csv"), "--feature", "00", "--shots", "5",
                                "--stage-dumps", dir.file("never")});
    CHECK(exhausted.code == 2);
    CHECK_FALSE(fs::exists(dir.path / "never"));

    CHECK(cli({"recommend", "--db", kTable, "--feature", "1010", "--shots", "5"}).code == 1);
    CHECK(cli({"predict", "--db", kTable, "--feature", "101011", "--iterations", "soon"}).code == 1);
    CHECK(cli({"gatecount", "--l", "6", "--n", "16", "--bogus"}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({}).code == 1);
}

TEST_CASE("validate summarises the table") {
    const auto r = cli({"validate", "--db", kTable});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["records"] == 16);
    CHECK(j["qubits"] == 17);
}
