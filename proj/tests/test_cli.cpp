#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "ipoly/report.hpp"
#include "test_util.hpp"

using namespace ipoly;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(IPOLY_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

}  // namespace

TEST_CASE("theta subcommand computes the reference value") {
    const CliResult res = run_cli("theta --c 0.5 --r 0.2 --digits 24 --json");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(res.out);
    CHECK(j["theta"].get<std::string>() == "0.418833985394304193770079");
    CHECK(j["inputs"]["c"].get<std::string>() == "0.5");
    CHECK(j["convergents"][0]["q"].get<std::string>() == "2");
    CHECK(j["convergents"][0]["p"].get<std::string>() == "1");
}

TEST_CASE("json report round-trips byte-identically") {
    const CliResult res = run_cli("theta --c 0.5 --r 0.2 --digits 24 --verify --json");
    REQUIRE(res.exit_code == 0);
    const auto parsed = nlohmann::ordered_json::parse(res.out);
    const std::string redumped = parsed.dump(2) + "\n";
    CHECK(redumped == res.out);
    CHECK(parsed["agreement_digits"].get<int>() >= 22);
    CHECK(parsed["oracle_theta"].is_string());
}

TEST_CASE("closure is reported as a rational success") {
    const CliResult res = run_cli("theta --c 0.2 --r 0.48 --json");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(res.out);
    CHECK(j["stages"]["closure_n"].get<std::string>() == "3");
    CHECK(j["stages"]["closure_p"].get<std::string>() == "1");
    CHECK(j["theta"].get<std::string>().substr(0, 6) == "0.3333");
}

TEST_CASE("exit codes form a stable contract") {
    CHECK(run_cli("theta --c 0.6 --r 0.5").exit_code == 2);            // not nested
    CHECK(run_cli("theta --c 0.5 --r 0.2 --budget 5").exit_code == 4); // budget
    CHECK(run_cli("theta --psi 2.5 --k2 0.5").exit_code == 2);         // psi out of range
}

TEST_CASE("integral view is reported for amplitude/modulus input") {
    const CliResult res = run_cli("theta --psi 0.4115168460674880 --k2 0.9049773755656109 "
                                  "--digits 20 --verify --json");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(res.out);
    // this (psi, k2) corresponds to the c = 0.5, r = 0.2 pair
    CHECK(j["theta"].get<std::string>().substr(0, 10) == "0.41883398");
    CHECK(j["agreement_digits"].get<int>() >= 18);
    const double beta = std::stod(j["stages"]["beta"].get<std::string>());
    const double F = std::stod(j["stages"]["F"].get<std::string>());
    const double Fc = std::stod(j["stages"]["F_complete"].get<std::string>());
    CHECK(std::abs(beta - (1 - 2 * 0.4188339853943)) < 1e-10);
    CHECK(std::abs(F - beta * Fc) < 1e-12);
}

TEST_CASE("ellipse subcommand emits the convergent table") {
    const CliResult res = run_cli("ellipse --a 0.5 --b 0.4 --c 0.4 --budget 2000 --json");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(res.out);
    REQUIRE(j["convergents"].size() >= 7);
    CHECK(j["convergents"][0]["q"].get<std::string>() == "3");
    CHECK(j["convergents"][6]["q"].get<std::string>() == "1327");
    CHECK(j["convergents"][6]["p"].get<std::string>() == "413");
}

TEST_CASE("ellipse weights input resolves the configuration") {
    const CliResult res = run_cli(
        "ellipse --alpha0 0.2356 --alpha1 0.064 --alpha2 -0.09 "
        "--cos-psi1 0.18518518518518518519 --budget 500 --json");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(res.out);
    CHECK(j["stages"]["a"].get<std::string>().substr(0, 4) == "0.50");
    CHECK(j["stages"]["b"].get<std::string>().substr(0, 4) == "0.40");
}

TEST_CASE("nr subcommand classifies and traces") {
    const std::string trace_path = "/tmp/ipoly_trace_test.csv";
    const CliResult res = run_cli("nr --a 0.6 --b1 0.4 --b2 0.4 --start 5 --budget 10000 "
                                  "--trace " + trace_path + " --json");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(res.out);
    CHECK(j["verdict"]["kind"].get<std::string>() == "regular");
    REQUIRE(j["convergents"].size() >= 8);
    CHECK(j["convergents"][0]["q"].get<std::string>() == "2");
    CHECK(j["convergents"][1]["q"].get<std::string>() == "3");

    std::ifstream trace(trace_path);
    REQUIRE(trace.good());
    std::string header;
    std::getline(trace, header);
    CHECK(header == "k,cos_psi,sin_psi,lambda_sq,log_h");
    long lines = 0;
    std::string line;
    while (std::getline(trace, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 10000);
    std::remove(trace_path.c_str());
}

TEST_CASE("verify sweep runs in parallel") {
    const CliResult res = run_cli("verify theta --digits 8 --sweep 4 --jobs 2 --seed 7");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("sweep: 4/4 verified") != std::string::npos);
}
