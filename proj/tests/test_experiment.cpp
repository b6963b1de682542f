#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ballotbox/experiment.hpp"
#include "ballotbox/profile_io.hpp"
#include "test_util.hpp"

#include <cstdlib>
#include <sstream>

using namespace ballotbox;
using testutil::p0;

namespace {

ExperimentConfig two_candidate_config(const std::string& schedule, long long trials) {
    ExperimentConfig config;
    config.generator = "two-candidate 10000 0";
    config.rule = RuleSpec::plurality();
    config.epsilon = Rational(1, 10);
    config.epsilon_text = "0.1";
    config.delta = Rational(1, 20);
    config.delta_text = "0.05";
    std::istringstream ss(schedule);
    Count ell;
    while (ss >> ell) config.schedule.push_back(ell);
    config.trials = trials;
    config.master_seed = 424242;
    return config;
}

} // namespace

TEST_CASE("config parsing") {
    const char* text = R"(
# comment
profile = p0.elect
rule = kapproval:2
epsilon = 0.1
delta = 0.05
schedule = 10 100 1000
trials = 50
seed = 7
output = out.csv
timing = off
)";
    const ExperimentConfig config = parse_experiment_config(text);
    CHECK(config.profile_path == "p0.elect");
    CHECK(config.rule.k == 2);
    CHECK(config.epsilon == Rational(1, 10));
    CHECK(config.schedule == std::vector<Count>{10, 100, 1000});
    CHECK(config.trials == 50);
    CHECK(config.master_seed == 7);
    CHECK(config.output_path == "out.csv");
    CHECK(!config.timing);

    CHECK_THROWS_AS(parse_experiment_config("rule = plurality\n"), DataError);
    CHECK_THROWS_AS(parse_experiment_config(
                        "profile = a\ngenerator = two-candidate 10 0\nrule = plurality\n"
                        "epsilon = 0.1\ndelta = 0.05\nschedule = formula\ntrials = 1\n"),
                    DataError);
    CHECK_THROWS_AS(parse_experiment_config("profile = a\nbogus_key = 1\n"), DataError);
}

TEST_CASE("formula schedule resolves through sample_size") {
    ExperimentConfig config = two_candidate_config("", 10);
    config.formula_schedule = true;
    const Profile profile = resolve_profile(config);
    const auto rows = run_experiment(config, profile);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ell == 17707);
}

TEST_CASE("unanimous profile: zero error at every schedule point") {
    ExperimentConfig config = two_candidate_config("1 5 20", 200);
    config.generator.clear();
    config.profile_path = "unused";
    const Profile unanimous = make_ranked(2, {{{1, 0}, 9}});
    const auto rows = run_experiment(config, unanimous);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.errors == 0);
        CHECK(row.error_rate == 0.0);
    }
}

TEST_CASE("two-candidate margin at ell=1: error rate near 1/2 - eps") {
    const ExperimentConfig config = two_candidate_config("1", 10000);
    const Profile profile = resolve_profile(config);
    CHECK(profile.n() == 10000);
    const auto rows = run_experiment(config, profile);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].error_rate > 0.38);
    CHECK(rows[0].error_rate < 0.42);
}

TEST_CASE("error rate is non-increasing in ell up to a noise band") {
    const ExperimentConfig config = two_candidate_config("10 100 1000", 2000);
    const auto rows = run_experiment(config, resolve_profile(config));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].error_rate <= rows[0].error_rate + 0.05);
    CHECK(rows[2].error_rate <= rows[1].error_rate + 0.05);
    CHECK(rows[2].error_rate < 0.05); // essentially resolved by ell=1000
}

TEST_CASE("csv output is bit-identical across runs and worker counts") {
    const ExperimentConfig config = two_candidate_config("1 10 50", 400);
    auto render = [&]() {
        std::ostringstream os;
        write_csv(run_experiment(config, resolve_profile(config)), os);
        return os.str();
    };
    setenv("BALLOTBOX_THREADS", "1", 1);
    const std::string run1 = render();
    setenv("BALLOTBOX_THREADS", "4", 1);
    const std::string run2 = render();
    unsetenv("BALLOTBOX_THREADS");
    const std::string run3 = render();
    CHECK(run1 == run2);
    CHECK(run1 == run3);
    CHECK(run1.find("rule,m,n,epsilon,delta,ell,trials,errors,error_rate,wall_seconds,seed") == 0);
    CHECK(run1.find("plurality,2,10000,0.1,0.05,1,400,") != std::string::npos);
    CHECK(run1.find(",0.000,424242") != std::string::npos); // timing off => wall_seconds 0.000
}

TEST_CASE("worker count env override") {
    setenv("BALLOTBOX_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    setenv("BALLOTBOX_THREADS", "0", 1);
    CHECK(worker_count() >= 1);
    unsetenv("BALLOTBOX_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("wall time scales linearly in trials x ell (single worker, +-30%)") {
    setenv("BALLOTBOX_THREADS", "1", 1);
    ExperimentConfig config = two_candidate_config("", 100);
    config.timing = true;
    const Profile profile = resolve_profile(config);
    auto median_seconds = [&](Count ell) {
        config.schedule = {ell};
        std::vector<double> times;
        for (int rep = 0; rep < 5; ++rep) times.push_back(run_experiment(config, profile)[0].wall_seconds);
        std::sort(times.begin(), times.end());
        return times[2];
    };
    const double small = median_seconds(8000);
    const double big = median_seconds(32000); // 4x the work
    unsetenv("BALLOTBOX_THREADS");
    const double ratio = big / small;
    CHECK(ratio > 4.0 * 0.7);
    CHECK(ratio < 4.0 * 1.3);
}

TEST_CASE("csv row formatting") {
    ExperimentRow row;
    row.rule = "stv";
    row.m = 5;
    row.n = 100;
    row.epsilon = "0.1";
    row.delta = "0.05";
    row.ell = 123;
    row.trials = 10;
    row.errors = 1;
    row.error_rate = 0.1;
    row.wall_seconds = 0.0;
    row.seed = 9;
    CHECK(to_csv_row(row) == "stv,5,100,0.1,0.05,123,10,1,0.100000,0.000,9");
}
