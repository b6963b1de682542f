#pragma once

#include "ballotbox/profile.hpp"
#include "ballotbox/rational.hpp"
#include "ballotbox/rules.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ballotbox {

// Flat `key = value` config. Keys: profile | generator, rule, epsilon, delta,
// schedule ("formula" or a list of sample sizes), trials, seed, output,
// timing (on|off, default off so CSV output is bit-reproducible).
struct ExperimentConfig {
    std::string profile_path;   // one of profile_path / generator is set
    std::string generator;      // e.g. "two-candidate 10000 0"
    RuleSpec rule;
    Rational epsilon;
    Rational delta;
    std::string epsilon_text;   // verbatim, echoed into the CSV
    std::string delta_text;
    std::vector<Count> schedule; // empty + formula_schedule => use sample_size()
    bool formula_schedule = false;
    long long trials = 0;
    std::uint64_t master_seed = 0;
    std::string output_path;
    bool timing = false;
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig read_experiment_config_file(const std::string& path);

struct ExperimentRow {
    std::string rule;
    int m = 0;
    Count n = 0;
    std::string epsilon;
    std::string delta;
    Count ell = 0;
    long long trials = 0;
    long long errors = 0;
    double error_rate = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

std::string experiment_csv_header(); // rule,m,n,epsilon,delta,ell,...
std::string to_csv_row(const ExperimentRow& row);

// Materializes the config's profile (file or generator spec). `base_dir`
// resolves relative profile paths.
Profile resolve_profile(const ExperimentConfig& config, const std::string& base_dir = "");

// One row per schedule point: `trials` predictions at that sample size with
// derived per-trial seeds; an error is predicted != true winner. Trials run
// in a worker pool (BALLOTBOX_THREADS, 0 = auto); outputs are independent of
// the worker count.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, const Profile& profile);

void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);

// Worker-pool width: BALLOTBOX_THREADS, or hardware concurrency when unset/0.
int worker_count();

} // namespace ballotbox
