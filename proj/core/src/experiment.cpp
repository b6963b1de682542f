#include "ballotbox/experiment.hpp"

#include "ballotbox/adversary.hpp"
#include "ballotbox/profile_io.hpp"
#include "ballotbox/sampler.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace ballotbox {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool have_rule = false, have_eps = false, have_delta = false, have_schedule = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DataError("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "profile") {
            config.profile_path = value;
        } else if (key == "generator") {
            config.generator = value;
        } else if (key == "rule") {
            config.rule = parse_rule(value);
            have_rule = true;
        } else if (key == "epsilon") {
            config.epsilon = parse_rational(value);
            config.epsilon_text = value;
            have_eps = true;
        } else if (key == "delta") {
            config.delta = parse_rational(value);
            config.delta_text = value;
            have_delta = true;
        } else if (key == "schedule") {
            have_schedule = true;
            if (value == "formula") {
                config.formula_schedule = true;
            } else {
                std::istringstream vs(value);
                long long ell = 0;
                while (vs >> ell) {
                    if (ell < 1) throw DataError("schedule entries must be >= 1", line_no);
                    config.schedule.push_back(ell);
                }
                if (config.schedule.empty()) throw DataError("empty schedule", line_no);
            }
        } else if (key == "trials") {
            config.trials = std::stoll(value);
        } else if (key == "seed") {
            config.master_seed = std::stoull(value);
        } else if (key == "output") {
            config.output_path = value;
        } else if (key == "timing") {
            if (value == "on") config.timing = true;
            else if (value == "off") config.timing = false;
            else throw DataError("timing must be 'on' or 'off'", line_no);
        } else {
            throw DataError("unknown config key '" + key + "'", line_no);
        }
    }
    if (config.profile_path.empty() && config.generator.empty())
        throw DataError("config needs 'profile' or 'generator'");
    if (!config.profile_path.empty() && !config.generator.empty())
        throw DataError("config must not set both 'profile' and 'generator'");
    if (!have_rule) throw DataError("config needs 'rule'");
    if (!have_eps || !have_delta) throw DataError("config needs 'epsilon' and 'delta'");
    if (config.epsilon <= 0 || config.epsilon > 1) throw DataError("epsilon must be in (0,1]");
    if (config.delta <= 0 || config.delta >= 1) throw DataError("delta must be in (0,1)");
    if (!have_schedule) throw DataError("config needs 'schedule'");
    if (config.trials < 1) throw DataError("config needs 'trials' >= 1");
    return config;
}

ExperimentConfig read_experiment_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

Profile resolve_profile(const ExperimentConfig& config, const std::string& base_dir) {
    if (!config.profile_path.empty()) {
        namespace fs = std::filesystem;
        fs::path p(config.profile_path);
        if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
        return read_profile_file(p.string());
    }
    std::istringstream gs(config.generator);
    std::string kind;
    gs >> kind;
    if (kind == "two-candidate") {
        long long n = 0;
        int which = 0;
        if (!(gs >> n >> which)) throw DataError("generator two-candidate needs '<n> <which>'");
        return gen_two_candidate(config.epsilon, n, which);
    }
    throw DataError("unknown generator '" + kind + "'");
}

int worker_count() {
    if (const char* env = std::getenv("BALLOTBOX_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, const Profile& profile) {
    std::vector<Count> schedule = config.schedule;
    if (config.formula_schedule)
        schedule.push_back(sample_size(config.rule, config.epsilon, config.delta, profile.m()));
    if (schedule.empty()) throw UsageError("empty sample-size schedule");

    const CandidateId truth = evaluate_winner(profile, config.rule);
    const int workers = worker_count();

    std::vector<ExperimentRow> rows;
    rows.reserve(schedule.size());
    for (const Count ell : schedule) {
        const auto start = std::chrono::steady_clock::now();
        std::atomic<long long> next_trial{0};
        std::atomic<long long> errors{0};
        auto body = [&]() {
            long long local_errors = 0;
            while (true) {
                const long long t = next_trial.fetch_add(1);
                if (t >= config.trials) break;
                const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(t));
                const PredictionOutcome outcome = predict_winner(profile, config.rule, ell, seed);
                if (outcome.predicted != truth) ++local_errors;
            }
            errors.fetch_add(local_errors);
        };
        if (workers <= 1 || config.trials == 1) {
            body();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<size_t>(workers));
            for (int w = 0; w < workers; ++w) pool.emplace_back(body);
            for (auto& th : pool) th.join();
        }
        const auto stop = std::chrono::steady_clock::now();

        ExperimentRow row;
        row.rule = config.rule.name();
        row.m = profile.m();
        row.n = profile.n();
        row.epsilon = config.epsilon_text.empty() ? rational_to_string(config.epsilon) : config.epsilon_text;
        row.delta = config.delta_text.empty() ? rational_to_string(config.delta) : config.delta_text;
        row.ell = ell;
        row.trials = config.trials;
        row.errors = errors.load();
        row.error_rate = static_cast<double>(row.errors) / static_cast<double>(row.trials);
        row.wall_seconds = config.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
        row.seed = config.master_seed;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string experiment_csv_header() {
    return "rule,m,n,epsilon,delta,ell,trials,errors,error_rate,wall_seconds,seed";
}

std::string to_csv_row(const ExperimentRow& row) {
    char tail[160];
    std::snprintf(tail, sizeof(tail), "%lld,%lld,%lld,%.6f,%.3f,%llu",
                  static_cast<long long>(row.ell), row.trials, row.errors, row.error_rate,
                  row.wall_seconds, static_cast<unsigned long long>(row.seed));
    std::ostringstream os;
    os << row.rule << "," << row.m << "," << row.n << "," << row.epsilon << "," << row.delta << ","
       << tail;
    return os.str();
}

void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    out << experiment_csv_header() << "\n";
    for (const auto& row : rows) out << to_csv_row(row) << "\n";
}

} // namespace ballotbox
