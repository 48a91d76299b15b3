// Copyright 2026 The pdqlab Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pdqlab/cli.hpp"
#include "pdqlab/csv.hpp"
#include "pdqlab/pdq.hpp"
#include "pdqlab/catalog.hpp"

using namespace pdqlab;
namespace fs = std::filesystem;

namespace {

struct cli_result {
    int code;
    std::string out;
    std::string err;
};

cli_result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "pdqlab_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("table1 emits the nine reference rows") {
    const auto res = run_cli({"table1"});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0][0] == "family");
    CHECK(rows[1][0] == "normal");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.153).epsilon(5e-4 / 0.153));
    CHECK(std::stod(rows[1][2]) == doctest::Approx(0.097).epsilon(5e-4 / 0.097));
    CHECK(std::stod(rows[1][5]) == doctest::Approx(0.250).epsilon(5e-4 / 0.25));
    // byte-identical reruns
    const auto again = run_cli({"table1"});
    CHECK(res.out == again.out);
}

TEST_CASE("power subcommand: null alternative gives the level") {
    const auto res = run_cli({"power", "--alt", "beta:b=1", "--m", "25", "--alpha", "0.05"});
    REQUIRE(res.code == 0);
    const auto j = nlohmann::json::parse(res.out);
    CHECK(j["power"].get<double>() == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("power sweep emits a curve") {
    const auto res = run_cli({"power", "--alt", "power:b=1", "--m", "25", "--alpha", "0.05",
                              "--sweep", "b=0.6:3:5"});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0][0] == "family");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.6));
    CHECK(std::stod(rows[5][1]) == doctest::Approx(3.0));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double p = std::stod(rows[i][4]);
        CHECK(p >= 0.0499);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("iterate with the moment engine prints the kappa ladder") {
    const auto res = run_cli({"iterate", "--family", "loglog", "--engine", "moments", "--n", "5"});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 6);
    for (int n = 1; n <= 5; ++n) {
        CHECK(std::stod(rows[n][1]) ==
              doctest::Approx((n + 2.0) / (n + 1.0)).epsilon(1e-9));
    }
    CHECK(rows[1].back() == "moments");
}

TEST_CASE("iterate with the grid engine and dump") {
    const fs::path dir = temp_file("dump");
    const auto res = run_cli({"iterate", "--family", "cauchy", "--engine", "grid", "--n", "3",
                              "--r", "4", "--dump", dir.string()});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][3] == "lr_4");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(fs::exists(dir / "step_001.csv"));
    CHECK(fs::exists(dir / "step_003.csv"));
    // dumped densities are valid import material
    std::ifstream in(dir / "step_002.csv");
    const grid_function gf = read_pdq_csv(in);
    CHECK(gf.nodes.size() > 1000);
}

TEST_CASE("sample then test round trip") {
    const fs::path file = temp_file("sample.txt");
    const auto s1 = run_cli({"sample", "--alt", "normal", "--m", "200", "--seed", "9", "-o",
                             file.string()});
    REQUIRE(s1.code == 0);
    std::ostringstream buf;
    buf << std::ifstream(file).rdbuf();
    const auto s2 = run_cli({"sample", "--alt", "normal", "--m", "200", "--seed", "9"});
    CHECK(s2.out == buf.str());  // identical bytes file vs stdout

    for (const std::string mode : {"asymptotic", "exact", "mc"}) {
        CAPTURE(mode);
        const auto t = run_cli({"test", "--alt", "normal", "--input", file.string(), "--alpha",
                                "0.05", "--mode", mode, "--reps", "2000"});
        REQUIRE(t.code == 0);
        const auto j = nlohmann::json::parse(t.out);
        CHECK(j.contains("statistic"));
        CHECK(j.contains("critical_value"));
        CHECK(j.contains("alpha"));
        CHECK(j["m"].get<int>() == 200);
        const std::string decision = j["decision"].get<std::string>();
        CHECK((decision == "reject" || decision == "retain"));
        // the sample really is from the alternative: every mode rejects
        CHECK(decision == "reject");
    }
}

TEST_CASE("map subcommand emits the locus csv") {
    const auto res = run_cli({"map", "--family", "pareto:a=1", "--sweep", "a=0.5:2:4"});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"family", "param", "s1", "s2", "distance"});
    const double d1 = std::stod(rows[1][4]);
    const double d4 = std::stod(rows[4][4]);
    CHECK(d1 > d4);  // distance decreases in the tail parameter
}

TEST_CASE("reconstruct rebuilds the square-law cdf") {
    const fs::path file = temp_file("pdq.csv");
    {
        std::ofstream os(file);
        write_pdq_csv(os, pdq::of(make_family("power", {{"b", 2.0}})).to_grid_function());
    }
    const auto res = run_cli({"reconstruct", "--input", file.string(), "--points", "64"});
    REQUIRE(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 66);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][0]);
        const double F = std::stod(rows[i][1]);
        CHECK(F == doctest::Approx(x * x).epsilon(2e-5));
    }
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"nosuchcommand"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"power", "--alt", "power:b=2"}).code == 2);  // missing --m
    CHECK(run_cli({"power", "--alt", "power:b=0.4", "--m", "25"}).code == 3);
    CHECK(run_cli({"test", "--alt", "normal", "--input", "/nonexistent/x.txt"}).code == 4);
    const auto bad = run_cli({"power", "--alt", "power:b=0.4", "--m", "25"});
    const auto j = nlohmann::json::parse(bad.err);
    CHECK(j["code"].get<int>() == 3);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"iterate", "--family", "normal", "--engine", "bogus", "--n", "2"}).code == 2);
}
