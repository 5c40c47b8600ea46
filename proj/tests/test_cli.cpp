#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#ifndef POLYIA_CLI_PATH
#error "POLYIA_CLI_PATH must point at the installed CLI binary"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;  // stdout and stderr interleaved
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + "\"" + POLYIA_CLI_PATH + "\" " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("exit codes: 0 success, 1 failed verification, 2 usage") {
    CHECK(run("verify --suite residuals").code == 0);
    CHECK(run("verify --suite asymptotics").code == 0);
    CHECK(run("verify --suite oracle").code == 1);   // convex series vs geometry
    CHECK(run("verify --suite all").code == 1);
    CHECK(run("--help").code == 0);
    CHECK(run("count --help").code == 0);
    CHECK(run("").code == 2);                        // a subcommand is required
    CHECK(run("frobnicate").code == 2);
    CHECK(run("count").code == 2);                   // --class is required
    CHECK(run("count --class hexiamond").code == 2);
    CHECK(run("count --class all --max-per 65").code == 2);
    CHECK(run("count --class baryiamond --type 7 --max-per 8").code == 2);
    CHECK(run("series --gf nope").code == 2);
    CHECK(run("series --gf ccp_C --order 0").code == 2);
    CHECK(run("asym --class baryiamond --n 10 --digits 5").code == 2);
    CHECK(run("asym --class all --n 10").code == 2);
}

TEST_CASE("usage errors name the offending input") {
    auto r = run("count --class hexiamond");
    CHECK(r.code == 2);
    CHECK(contains(r.out, "unknown class: hexiamond"));
    auto s = run("series --gf nope");
    CHECK(contains(s.out, "unknown gf entry: nope"));
}

TEST_CASE("count emits CSV with canonical labels") {
    auto r = run("count --class column-convex --max-per 10 --format csv --no-meta");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "class,perimeter,count"));
    CHECK(contains(r.out, "column-convex,3,2"));
    CHECK(contains(r.out, "column-convex,10,988"));
    CHECK_FALSE(contains(r.out, "#"));  // meta suppressed

    // Underscore spelling parses to the same canonical label.
    auto u = run("count --class column_convex --max-per 10 --format csv --no-meta");
    CHECK(u.out == r.out);

    // Meta trailer appears without --no-meta.
    auto m = run("count --class column-convex --max-per 10 --format csv");
    CHECK(contains(m.out, "# p_max=10"));
}

TEST_CASE("series emits exact rational coefficients as JSON") {
    auto r = run("series --gf convex_F --order 12 --format json --no-meta");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"entry\": \"convex_F\""));
    CHECK(contains(r.out, "{\"n\": 11, \"num\": \"2006\", \"den\": \"1\"}"));
    auto k = run("series --gf u_plus_sq --order 6 --format json --no-meta");
    CHECK(contains(k.out, "{\"n\": 3, \"num\": \"9\", \"den\": \"8\"}"));
    CHECK(contains(k.out, "{\"n\": 5, \"num\": \"239\", \"den\": \"128\"}"));
}

TEST_CASE("repeated runs are byte-identical with --no-meta") {
    const std::string args = "count --class convex --max-per 12 --format json --no-meta";
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto c = run("count --class convex --max-per 12 --threads 3 --format json --no-meta");
    CHECK(c.out == a.out);
}

TEST_CASE("cell budget env var truncates the general enumeration honestly") {
    auto r = run("count --class all --max-per 12 --format csv --no-meta",
                 "POLYIA_MAX_CELLS=6 ");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "all,6,15"));
    CHECK_FALSE(contains(r.out, "all,7"));  // not complete past the budget
    auto full = run("count --class all --max-per 8 --format csv --no-meta");
    CHECK(contains(full.out, "all,7,42"));
    CHECK(contains(full.out, "all,8,123"));
}

TEST_CASE("--output writes the file and keeps stdout quiet") {
    std::string path = "cli_test_output.csv";
    std::remove(path.c_str());
    auto r = run("count --class baryiamond --max-per 8 --format csv --no-meta --output " + path);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(contains(ss.str(), "baryiamond,8,32"));
    std::remove(path.c_str());
}

TEST_CASE("verify text output lists each check") {
    auto r = run("verify --suite residuals");
    CHECK(contains(r.out, "== suite residuals =="));
    CHECK(contains(r.out, "PASS bary_kernel_root"));
    CHECK(contains(r.out, "PASS convex_assembly"));
    CHECK_FALSE(contains(r.out, "FAIL"));
}

TEST_CASE("verify oracle JSON pinpoints the known convex divergence") {
    auto r = run("verify --suite oracle --format json --no-meta");
    CHECK(r.code == 1);
    CHECK(contains(r.out, "\"class\": \"convex\""));
    CHECK(contains(r.out, "\"first_mismatch\": 8"));
    CHECK(contains(r.out, "\"enumeration\": \"103\""));
    CHECK(contains(r.out, "\"series_count\": \"102\""));
    // The two-route classes agree in full.
    CHECK(contains(r.out, "{\"series\": \"baryiamond_B\", \"first_mismatch\": -1}"));
    CHECK(contains(r.out, "{\"series\": \"ccp_altform\", \"first_mismatch\": -1}"));
}

TEST_CASE("asym prints the thirty-digit estimate") {
    auto r = run("asym --class convex --n 10 --format text --no-meta");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "class convex, n=10: 1.76542130640920160592117658044e+03"));
}

TEST_CASE("asym --terms prints the convergence table") {
    auto r = run("asym --class baryiamond --n 12 --terms 24 --format text --no-meta");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "growth 2.24129059084"));
    CHECK(contains(r.out, "n_max 24"));
    CHECK(contains(r.out, "ratio_dev_shrinks=true"));
}
