#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "p2bundle/io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(P2B_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/p2bundle_test_") + name;
}

}  // namespace

TEST_CASE("rr prints exact Euler characteristics", "[cli]") {
    auto r = run_cli("rr --space p2 --c1 0 --c2 0 --k 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2\n");

    r = run_cli("rr --space p2 --c1 -1 --c2 3 --k 1");
    CHECK(r.out == "1\n");

    r = run_cli("rr --space p3 --c1 -1 --c2 3 --k 0");
    CHECK(r.out == "-7/2\n");

    r = run_cli("rr --space p3 --c1 0 --c2 2 --k 0");
    CHECK(r.out == "-2\n");
}

TEST_CASE("usage and validation exit codes", "[cli]") {
    CHECK(run_cli("rr --space p4 --c1 0 --c2 0 --k 0").exit_code == 2);
    CHECK(run_cli("bogus").exit_code == 2);
    CHECK(run_cli("rr --space p2 --c1 5 --c2 0 --k 0").exit_code == 3);
    CHECK(run_cli("classify --scheme /nonexistent.json").exit_code == 3);
}

TEST_CASE("random schemes round-trip through classify and cohomology", "[cli]") {
    const auto scheme = temp_path("roundtrip.json");

    auto r = run_cli("random --u 3 --seed 5 --out " + scheme);
    REQUIRE(r.exit_code == 0);

    r = run_cli("classify --scheme " + scheme + " --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = p2b::json::parse(r.out);
    CHECK(doc.at("u") == 3);
    CHECK(doc.at("label") == "B1");
    CHECK(doc.at("generators") == p2b::json::array({2, 2, 2}));

    r = run_cli("cohomology --scheme " + scheme + " --c1 0 --r 1 --format json");
    REQUIRE(r.exit_code == 0);
    const auto table = p2b::json::parse(r.out);
    CHECK(table.at("c2") == 2);
    CHECK(table.at("stable") == true);

    // identical arguments must reproduce identical bytes
    const auto again = run_cli("cohomology --scheme " + scheme +
                               " --c1 0 --r 1 --format json");
    CHECK(again.out == r.out);
}

TEST_CASE("random output is deterministic and honors the field flag", "[cli]") {
    const auto a = run_cli("random --u 4 --seed 11");
    const auto b = run_cli("random --u 4 --seed 11");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const auto q = run_cli("random --u 2 --field q --seed 3");
    REQUIRE(q.exit_code == 0);
    CHECK(p2b::json::parse(q.out).at("field").at("type") == "q");

    CHECK(run_cli("random --u 4 --constraint nonsense --seed 1").exit_code == 3);
}

TEST_CASE("cohomology of the twisted cotangent data", "[cli]") {
    const auto scheme = temp_path("omega.json");
    REQUIRE(run_cli("random --u 1 --seed 2 --out " + scheme).exit_code == 0);

    auto r = run_cli("cohomology --scheme " + scheme + " --c1 -1 --r 1 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = p2b::json::parse(r.out);
    CHECK(doc.at("c2") == 1);
    for (const auto& row : doc.at("rows"))
        CHECK(row.at("h1") == (row.at("k") == -1 ? 1 : 0));

    // a window that clips the h1 support is an input validation error
    CHECK(run_cli("cohomology --scheme " + scheme +
                  " --c1 -1 --r 1 --range -1..4")
              .exit_code == 3);

    // minimality violation: r = 0 is not the least section twist here
    CHECK(run_cli("cohomology --scheme " + scheme + " --c1 0 --r 1").exit_code == 3);

    const auto text = run_cli("cohomology --scheme " + scheme + " --c1 -1 --r 1");
    CHECK(text.exit_code == 0);
    CHECK(text.out.find("h1") != std::string::npos);
}

TEST_CASE("verify emits a summary and a meaningful exit code", "[cli]") {
    auto r = run_cli("verify --trials 5 --seed 1 --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = p2b::json::parse(r.out);
    CHECK(doc.at("config").at("trials") == 5);
    CHECK(doc.at("failures").empty());

    long long flags = 0;
    for (const auto& c : doc.at("checks")) flags += c.at("flag").get<long long>();
    CHECK(flags == 1);  // the one documented remark discrepancy

    const auto again = run_cli("verify --trials 5 --seed 1 --format json");
    CHECK(again.out == r.out);

    const auto remarks = run_cli("verify --suite remarks --seed 1 --format json");
    REQUIRE(remarks.exit_code == 0);
    const auto rd = p2b::json::parse(remarks.out);
    long long remark_flags = 0;
    for (const auto& c : rd.at("checks"))
        remark_flags += c.at("flag").get<long long>();
    CHECK(remark_flags == 1);

    const auto cases = run_cli("verify --suite resolutions --seed 1 --format json");
    REQUIRE(cases.exit_code == 0);
    const auto cd = p2b::json::parse(cases.out);
    for (const auto& c : cd.at("checks"))
        if (c.at("id") == "resolution_case") CHECK(c.at("pass") == 10);
}
