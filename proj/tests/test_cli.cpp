#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the CLI, capturing stdout+stderr and the exit status.
RunResult run_cli(const std::string& args) {
    const std::string command = std::string(BALLOTBOX_CLI) + " " + args + " 2>&1";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe)) result.output += buffer.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fixture(const char* name) { return std::string(BALLOTBOX_FIXTURES) + "/" + name; }

} // namespace

TEST_CASE("winner golden output on P0") {
    const RunResult r = run_cli("winner --rule plurality --input " + fixture("p0.elect"));
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "rule: plurality\n"
          "winner: a\n"
          "score a 2\n"
          "score b 0\n"
          "score c 1\n");
}

TEST_CASE("winner stv trace golden output") {
    const RunResult r = run_cli("winner --rule stv --input " + fixture("p0.elect"));
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "rule: stv\n"
          "winner: a\n"
          "score a 3\n"
          "score b 1\n"
          "score c 2\n"
          "trace: round 1: eliminated b\n"
          "trace: round 2: eliminated c\n");
}

TEST_CASE("mov golden output") {
    const RunResult r = run_cli("mov --rule plurality --input " + fixture("p0.elect") + " --cap 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "rule: plurality\n"
          "original winner: a\n"
          "mov: 1\n"
          "new winner: c\n"
          "replace 1 x 0>1>2\n"
          "with 1 x 2>0>1\n");
}

TEST_CASE("certify golden outputs") {
    SUBCASE("maximin") {
        const RunResult r = run_cli("certify --rule maximin --epsilon 1/3 --input " + fixture("p0.elect"));
        CHECK(r.exit_code == 0);
        CHECK(r.output ==
              "maximin certificate (maximin-gap): value 2, winner a [holds]\n"
              "threshold: 1\n"
              "certificate: holds\n");
    }
    SUBCASE("runoff at 1/9") {
        const RunResult r = run_cli("certify --rule runoff --epsilon 1/9 --input " + fixture("p0.elect"));
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("cond1 slack 1/3") != std::string::npos);
        CHECK(r.output.find("cond3 vacuous") != std::string::npos);
        CHECK(r.output.find("certificate: holds") != std::string::npos);
    }
    SUBCASE("bucklin at 1/3 reports levels") {
        const RunResult r = run_cli("certify --rule bucklin --epsilon 1/3 --input " + fixture("p0.elect"));
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("levels a=1 b=2 c=3") != std::string::npos);
    }
}

TEST_CASE("sample-size golden output") {
    const RunResult r = run_cli("sample-size --rule plurality --epsilon 0.1 --delta 0.05 --m 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "rule: plurality\n"
          "m: 5\n"
          "epsilon: 0.1\n"
          "delta: 0.05\n"
          "ell: 17707\n"
          "formula: ceil(48/eps^2 * ln(2/delta))\n");
    const RunResult g = run_cli("sample-size --rule generic --epsilon 0.1 --delta 0.05 --m 3");
    CHECK(g.output.find("ell: 39461") != std::string::npos);
    const RunResult k = run_cli("sample-size --rule kapproval --k 3 --epsilon 0.1 --delta 0.05 --m 8");
    CHECK(k.output.find("rule: kapproval(3)") != std::string::npos);
}

TEST_CASE("predict is deterministic for a fixed seed") {
    const std::string args = "predict --rule plurality --epsilon 1/3 --delta 0.05 --seed 7 --input " +
                             fixture("p0.elect");
    const RunResult r1 = run_cli(args);
    const RunResult r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.output == r2.output);
    CHECK(r1.output.find("ell: 1594\n") != std::string::npos);
    CHECK(r1.output.find("predicted: a\n") != std::string::npos);
}

TEST_CASE("gen + divergence round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ballotbox_cli_family";
    fs::remove_all(dir);
    const RunResult g =
        run_cli("gen --family kapproval --m 8 --k 3 --epsilon 0.1 --n 2000 --out " + dir.string());
    CHECK(g.exit_code == 0);
    CHECK(g.output.find("manifest (4 members)") != std::string::npos);
    CHECK(fs::exists(dir / "kapproval_member_0.elect"));
    const RunResult d = run_cli("divergence --family-dir " + dir.string());
    CHECK(d.exit_code == 0);
    CHECK(d.output.find("member 0: kl 0.") != std::string::npos);
    CHECK(d.output.find("generalized-js: 0.") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("experiment subcommand writes deterministic CSV") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ballotbox_cli_experiment";
    fs::create_directories(dir);
    const fs::path config = dir / "exp.config";
    const fs::path csv1 = dir / "out1.csv";
    const fs::path csv2 = dir / "out2.csv";
    auto write_config = [&](const fs::path& out) {
        std::ofstream c(config);
        c << "generator = two-candidate 10000 0\nrule = plurality\nepsilon = 0.1\ndelta = 0.05\n"
          << "schedule = 1 10\ntrials = 500\nseed = 99\noutput = " << out.string() << "\n";
    };
    write_config(csv1);
    CHECK(run_cli("experiment --config " + config.string()).exit_code == 0);
    write_config(csv2);
    CHECK(run_cli("experiment --config " + config.string()).exit_code == 0);
    std::ifstream f1(csv1), f2(csv2);
    const std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    const std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(s1.find("rule,m,n,epsilon,delta,ell,trials,errors,error_rate,wall_seconds,seed\n") == 0);
    fs::remove_all(dir);
}

TEST_CASE("help lists all subcommands") {
    const RunResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    for (const char* sub : {"winner", "mov", "certify", "sample-size", "predict", "gen", "divergence",
                            "experiment"})
        CHECK(r.output.find(sub) != std::string::npos);
}

TEST_CASE("exit codes: 2 usage, 3 data") {
    CHECK(run_cli("winner --rule nonsense --input " + fixture("p0.elect")).exit_code == 2);
    CHECK(run_cli("winner --rule plurality --input /does/not/exist.elect").exit_code == 3);
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
    CHECK(run_cli("sample-size --rule plurality --epsilon 2 --delta 0.05 --m 3").exit_code == 2);
    // malformed profile -> data error with a line number
    namespace fs = std::filesystem;
    const fs::path bad = fs::temp_directory_path() / "ballotbox_bad.elect";
    std::ofstream(bad) << "election 3 ranked\ncandidate 0 a\ncandidate 1 b\ncandidate 2 c\nballots\n1: 0>0>1\n";
    const RunResult r = run_cli("winner --rule plurality --input " + bad.string());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("line 6") != std::string::npos);
    fs::remove(bad.string());
}
