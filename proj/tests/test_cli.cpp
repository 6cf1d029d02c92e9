#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "jtheta/report.hpp"

#ifndef JTHETA_CLI_PATH
#define JTHETA_CLI_PATH "./jtheta"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(JTHETA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

jtheta::Json payload_of(const RunResult& r) {
    auto j = jtheta::Json::parse(r.out);
    return j.at("payload");
}

}  // namespace

TEST_CASE("gauss eval envelope and values") {
    auto r = run_cli("gauss eval --a 1 --b 0 --c 4");
    REQUIRE(r.exit_code == 0);
    auto j = jtheta::Json::parse(r.out);
    CHECK(j.at("command") == "gauss eval");
    CHECK(j.at("status") == "pass");
    CHECK(j.at("tool_version") == std::string(jtheta::kToolVersion));
    auto exact = jtheta::cyclo_from_json(j.at("payload").at("exact"));
    auto expect = (jtheta::CycloNumber::one(4) + jtheta::root_of_unity(4, 1)).scaled(jtheta::Rational(2));
    CHECK(exact == jtheta::change_order(expect, exact.order()));
    double re = j.at("payload").at("numeric").at(0).get<double>();
    double im = j.at("payload").at("numeric").at(1).get<double>();
    CHECK(std::abs(re - 2.0) < 1e-12);
    CHECK(std::abs(im - 2.0) < 1e-12);
}

TEST_CASE("gauss verify passes and is deterministic modulo elapsed") {
    auto r1 = run_cli("gauss verify --cmax 25");
    auto r2 = run_cli("gauss verify --cmax 25");
    REQUIRE(r1.exit_code == 0);
    auto j1 = jtheta::Json::parse(r1.out);
    auto j2 = jtheta::Json::parse(r2.out);
    j1.erase("elapsed");
    j2.erase("elapsed");
    CHECK(j1 == j2);
    CHECK(j1.at("payload").at("failures").empty());
    CHECK(j1.at("payload").at("checked").get<long long>() > 0);
}

TEST_CASE("csv format for scan tables") {
    auto r = run_cli("--format csv gauss verify --cmax 10");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("key,value", 0) == 0);
    auto r2 = run_cli("--format csv rank scan --max-index 9");
    REQUIRE(r2.exit_code == 0);
    CHECK(r2.out.rfind("m1,m2,", 0) == 0);
}

TEST_CASE("witness payload matches the spec'd shape") {
    auto r = run_cli("witness --p 3 --mu 1 --D 11");
    REQUIRE(r.exit_code == 0);
    auto p = payload_of(r);
    CHECK(p.at("fourDet") == 11);
    CHECK(p.at("T").at(0).at(0) == 1.0);
    CHECK(p.at("T").at(0).at(1) == 0.5);
    CHECK(p.at("T").at(1).at(1) == 3.0);
    CHECK(p.at("positive_definite") == true);
}

TEST_CASE("construct | vell | decompose | check pipeline") {
    auto c = run_cli("jacobi construct --form phi10_1 --prec 81");
    REQUIRE(c.exit_code == 0);
    std::ofstream("cli_phi.json") << c.out;
    auto v = run_cli("jacobi vell --input cli_phi.json --ell 3");
    REQUIRE(v.exit_code == 0);
    std::ofstream("cli_v3.json") << v.out;
    auto d = run_cli("jacobi decompose --input cli_v3.json");
    REQUIRE(d.exit_code == 0);
    CHECK(payload_of(d).at("components").size() == 6);
    auto k = run_cli("jacobi check --input cli_v3.json --split 1,3");
    REQUIRE(k.exit_code == 0);
    CHECK(payload_of(k).at("has_coprime_mu") == true);
    std::remove("cli_phi.json");
    std::remove("cli_v3.json");
}

TEST_CASE("halfint sieve from json input") {
    std::ofstream("cli_f.json")
        << R"({"kappa_num":5,"L":3,"bound":40,"support_rule":"all_stored","entries":[[3,1,1],[9,1,1]]})";
    auto r = run_cli("halfint sieve --input cli_f.json --Lf 2");
    REQUIRE(r.exit_code == 0);
    auto p = payload_of(r);
    CHECK(p.at("ok") == true);
    CHECK(p.at("exponents").at(0).at(0) == 3);
    CHECK(p.at("exponents").at(0).at(1) == 1);
    CHECK(p.at("trace").at("final_level_L") == 36);
    CHECK(jtheta::Json::parse(r.out).at("status") == "pass");
    std::remove("cli_f.json");
    // without a support rule the verdicts are only good up to the bound:
    // the run completes but is flagged as a warning, exit code still 0
    std::ofstream("cli_g.json") << R"({"kappa_num":5,"L":3,"entries":[[3,1,1],[9,1,1]]})";
    auto w = run_cli("halfint sieve --input cli_g.json --Lf 2");
    REQUIRE(w.exit_code == 0);
    CHECK(jtheta::Json::parse(w.out).at("status") == "warn");
    CHECK(payload_of(w).at("trace").at("verdicts_exact") == false);
    std::remove("cli_g.json");
}

TEST_CASE("exit codes: usage errors give 2, verification failures give 1") {
    CHECK(run_cli("gauss bogus").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("witness --p 3 --mu 1 --D 10").exit_code == 2);  // congruence violated: input error
    CHECK(run_cli("jacobi vell --input does_not_exist.json --ell 3").exit_code == 2);
    // a genuine verification failure: the even-m2 deficiency
    auto r = run_cli("rank scan --max-index 2 --include-even-m2");
    CHECK(r.exit_code == 1);
    auto j = jtheta::Json::parse(r.out);
    CHECK(j.at("status") == "fail");
    CHECK(!j.at("payload").at("failures").empty());
}

TEST_CASE("transform-check subcommand") {
    auto r = run_cli("jacobi transform-check --N 1 --m 1 --tau 0,2 --z 0.3,0.2 --prec 220");
    REQUIRE(r.exit_code == 0);
    auto p = payload_of(r);
    CHECK(p.at("theta_law").at("max_residual").get<double>() < 1e-6);
    CHECK(p.at("component_relation").at("max_residual").get<double>() < 1e-6);
}

TEST_CASE("epsilon matrix and square-classes subcommands") {
    auto r = run_cli("epsilon matrix --N 3 --m1 3 --m2 1 --nu0 1");
    REQUIRE(r.exit_code == 0);
    auto p = payload_of(r);
    CHECK(p.at("rank") == 2);
    CHECK(p.at("max_rank") == true);
    auto s = run_cli("square-classes --m1 3 --m2 1");
    REQUIRE(s.exit_code == 0);
    CHECK(payload_of(s).at("classes").size() > 0);
}
