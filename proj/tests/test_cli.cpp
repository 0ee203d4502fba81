#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

namespace {

const std::string cli = WQED_CLI_PATH;

int run(const std::string& args) {
    const std::string command = cli + " " + args + " > /dev/null 2>&1";
    return std::system(command.c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("command-line basics") {
    CHECK(run("--help") == 0);
    CHECK(run("definitely-not-a-command") != 0);
    // Bad angle syntax must fail cleanly.
    CHECK(run("mag-curve --pattern nn -n 6 --theta nonsense "
              "-o /tmp/wqed_cli_bad") != 0);
}

TEST_CASE("exact models through the command line") {
    CHECK(run("exact --model nn-gaps --theta 0.25pi --mu 2 "
              "-o /tmp/wqed_cli_gaps") == 0);
    const auto manifest = slurp("/tmp/wqed_cli_gaps.json");
    CHECK(manifest.find("magnon_gap") != std::string::npos);
}

TEST_CASE("deterministic byte-identical output") {
    const std::string args =
        "mag-curve --pattern waveguide --bandgap lower --xi 1 "
        "--dimerization -0.2 -n 8 --theta 0.25pi --mu-min 0 --mu-max 2 "
        "--mu-grid 21";
    REQUIRE(run(args + " -o /tmp/wqed_cli_a --workers 1") == 0);
    REQUIRE(run(args + " -o /tmp/wqed_cli_b --workers 4") == 0);
    CHECK(slurp("/tmp/wqed_cli_a.csv") == slurp("/tmp/wqed_cli_b.csv"));
}

TEST_CASE("correlation profiles") {
    REQUIRE(run("correlations --pattern uniform-lbg -n 12 --theta -0.25pi "
                "--m 0 --r-max 5 -o /tmp/wqed_cli_corr") == 0);
    const auto csv = slurp("/tmp/wqed_cli_corr.csv");
    CHECK(csv.find("r,Cx,Cy,Cz") != std::string::npos);
    // All-pair uniform couplings: zz = -1/44 at every distance.
    CHECK(csv.find("-2.272727272727e-02") != std::string::npos);
}
