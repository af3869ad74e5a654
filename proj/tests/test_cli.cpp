// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <hopfrep/io.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
using hopfrep::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + HOPFREP_CLI + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string sample(const char* name) { return (fs::path(HOPFREP_SAMPLES) / name).string(); }

fs::path scratch(const char* name) {
    fs::path d = fs::temp_directory_path() / "hopfrep_cli_test";
    fs::create_directories(d);
    return d / name;
}

}  // namespace

TEST_CASE("decompose W(1) x W(1)") {
    Run r = cli("mod decompose " + sample("W1xW1.json"));
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    auto tags = j["summands"].get<std::multiset<std::string>>();
    CHECK(tags == std::multiset<std::string>{"W(a=1)", "W(a=-1)"});
    CHECK(j["dims"] == json::array({2, 2}));
}

TEST_CASE("verify reports the violated block condition") {
    Run bad = cli("mod verify " + sample("bad_k.json"));
    CHECK(bad.status == 1);
    json j = json::parse(bad.out);
    CHECK_FALSE(j["ok"].get<bool>());
    auto blocks = j["block_constraints"].get<std::vector<std::string>>();
    CHECK(std::find(blocks.begin(), blocks.end(), "CD=0") != blocks.end());
    CHECK(cli("mod verify " + sample("U12.json")).status == 0);
}

TEST_CASE("algebra commands") {
    Run k = cli("alg identities K --n-max 8");
    CHECK(k.status == 0);
    CHECK(k.out.find("identities reduce to 0") != std::string::npos);
    CHECK(cli("alg hopf-axioms H").status == 0);
    CHECK(cli("--json alg identities L --n-max 4").status == 0);
}

TEST_CASE("usage and input errors exit with 2") {
    CHECK(cli("").status == 2);
    CHECK(cli("mod").status == 2);
    CHECK(cli("alg identities Z").status == 2);
    CHECK(cli("mod verify /nonexistent/m.json").status == 2);
    CHECK(cli("mod new --tag 'U(a=1'").status == 2);
    CHECK(cli("mod new").status == 2);
    CHECK(cli("mod new --tag 'U(a=1,b=1)' --file x.json").status == 2);
    CHECK(cli("fusion verify-V --n 0 --m 1").status == 2);
}

TEST_CASE("emitted modules re-parse and re-verify") {
    for (const char* tag : {"U(a=1,b=2)", "L3_2(a=2)", "F(j=5,n=4,a=1,b=1,c=2)"}) {
        Run r = cli(std::string("mod new --tag '") + tag + "'");
        REQUIRE(r.status == 0);
        auto path = scratch("m.json");
        std::ofstream(path) << r.out;
        CHECK(cli("mod verify " + path.string()).status == 0);
        CHECK(cli("mod new --file " + path.string()).out == r.out);
    }
    Run d = cli("mod dual " + sample("U12.json"));
    REQUIRE(d.status == 0);
    auto path = scratch("d.json");
    std::ofstream(path) << d.out;
    Run dd = cli("mod dual " + path.string());
    CHECK(dd.status == 0);
}

TEST_CASE("hom, ext1 and K-module commands") {
    json h = json::parse(cli("mod hom " + sample("W1.json") + " " + sample("W1.json")).out);
    CHECK(h["dim"] == 1);
    json e = json::parse(cli("mod ext1 " + sample("k2.json") + " " + sample("k2.json")).out);
    CHECK(e["dim"] == 1);
    Run inf = cli("mod inflate " + sample("U12.json"));
    REQUIRE(inf.status == 0);
    CHECK(json::parse(inf.out)["algebra"] == "K");
    json hom = json::parse(cli("mod homology " + sample("L3_1.json")).out);
    CHECK(hom["kernel"]["dim"] == 2);
    CHECK(hom["image"]["dim"] == 1);
    CHECK(cli("mod homology " + sample("U12.json")).status == 2);
    json c = json::parse(cli("mod classify " + sample("L3_1.json")).out);
    CHECK(c["summands"][0]["tag"] == "L3_1(a=1)");
}

TEST_CASE("seed precedence and determinism") {
    auto dir = scratch("table");
    fs::remove_all(dir);
    Run a = cli("fusion table --grid 1,-1 --out " + dir.string(), "HOPFREP_SEED=5");
    REQUIRE(a.status == 0);
    CHECK(hopfrep::read_json_file((dir / "table.json").string())["seed"] == 5);
    CHECK(fs::exists(dir / "table.txt"));
    fs::remove_all(dir);
    Run b = cli("--seed 7 fusion table --grid 1,-1 --out " + dir.string(), "HOPFREP_SEED=5");
    REQUIRE(b.status == 0);
    CHECK(hopfrep::read_json_file((dir / "table.json").string())["seed"] == 7);
    CHECK(a.out == b.out);
    fs::remove_all(dir);

    Run x = cli("mod decompose " + sample("W1xW1.json")), y = cli("mod decompose " + sample("W1xW1.json"));
    CHECK(x.out == y.out);
    Run v = cli("fusion verify-V --n 4 --m 3");
    CHECK(v.status == 0);
    CHECK(json::parse(v.out)["dims"] == json::array({2, 4, 6}));
}
