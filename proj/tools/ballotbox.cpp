// ballotbox — sampling-based election winner prediction workbench.
#include "CLI11.hpp"

#include "ballotbox/adversary.hpp"
#include "ballotbox/experiment.hpp"
#include "ballotbox/margin.hpp"
#include "ballotbox/profile_io.hpp"
#include "ballotbox/sampler.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace ballotbox;

namespace {

std::string ballot_text(const Profile& profile, const Ballot& ballot) {
    std::string s;
    if (profile.kind() == BallotKind::Ranked) {
        for (size_t i = 0; i < ballot.seq.size(); ++i) {
            if (i) s += ">";
            s += std::to_string(ballot.seq[i]);
        }
    } else {
        s += "{";
        for (size_t i = 0; i < ballot.seq.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(ballot.seq[i]);
        }
        s += "}";
    }
    return s;
}

std::string formula_text(const RuleSpec& rule) {
    switch (rule.kind) {
        case RuleSpec::Kind::Plurality: return "ceil(48/eps^2 * ln(2/delta))";
        case RuleSpec::Kind::KApproval: return "ceil(48/eps^2 * ln(2k/delta))";
        case RuleSpec::Kind::Scoring:
        case RuleSpec::Kind::Borda: return "ceil(8/eps^2 * ln(2m/delta))";
        case RuleSpec::Kind::Approval: return "ceil(2/eps^2 * ln(2m/delta))";
        case RuleSpec::Kind::Maximin: return "ceil(8/eps^2 * ln(4m^2/delta))";
        case RuleSpec::Kind::Copeland: return "ceil(50(ceil(log2 m)+1)^2/eps^2 * ln(4m^2/delta))";
        case RuleSpec::Kind::Bucklin: return "ceil(8/eps^2 * ln(4m^2/delta))";
        case RuleSpec::Kind::PluralityRunoff: return "ceil(75/eps^2 * ln(8/delta))";
        case RuleSpec::Kind::Stv: return "ceil(3m^2/eps^2 * ((m+1)ln2 + ln(2m/delta)))";
    }
    return "?";
}

int run(int argc, char** argv) {
    CLI::App app{"sampling-based election winner prediction workbench"};
    app.require_subcommand(1);

    std::string rule_text = "plurality", input, eps_text = "0.1", delta_text = "0.05";
    std::uint64_t seed = 0;

    auto* winner = app.add_subcommand("winner", "evaluate a voting rule on a profile");
    winner->add_option("--rule", rule_text, "voting rule")->required();
    winner->add_option("--input", input, "profile file")->required();

    int cap = 3;
    auto* mov = app.add_subcommand("mov", "brute-force margin of victory");
    mov->add_option("--rule", rule_text, "voting rule")->required();
    mov->add_option("--input", input, "profile file")->required();
    mov->add_option("--cap", cap, "search depth cap");

    auto* certify = app.add_subcommand("certify", "evaluate the rule's gap certificate at epsilon");
    certify->add_option("--rule", rule_text, "voting rule")->required();
    certify->add_option("--epsilon", eps_text, "margin promise, fraction of n")->required();
    certify->add_option("--input", input, "profile file")->required();

    int m_arg = 0, k_arg = 0;
    auto* size = app.add_subcommand("sample-size", "explicit sample size for a rule");
    size->add_option("--rule", rule_text, "voting rule, or 'generic'")->required();
    size->add_option("--epsilon", eps_text)->required();
    size->add_option("--delta", delta_text)->required();
    size->add_option("--m", m_arg, "number of candidates")->required();
    size->add_option("--k", k_arg, "k for kapproval");

    auto* predict = app.add_subcommand("predict", "predict the winner from a formula-sized sample");
    predict->add_option("--rule", rule_text)->required();
    predict->add_option("--epsilon", eps_text)->required();
    predict->add_option("--delta", delta_text)->required();
    predict->add_option("--seed", seed)->required();
    predict->add_option("--input", input)->required();

    std::string family, out_dir;
    int gen_m = 0, gen_k = 0;
    long long gen_n = 0;
    auto* gen = app.add_subcommand("gen", "write a lower-bound profile family + manifest");
    gen->add_option("--family", family, "two | kapproval | borda | bucklin")->required();
    gen->add_option("--epsilon", eps_text)->required();
    gen->add_option("--n", gen_n, "voters per member")->required();
    gen->add_option("--m", gen_m, "number of candidates");
    gen->add_option("--k", gen_k, "approval size (kapproval family)");
    gen->add_option("--out", out_dir, "output directory")->required();

    std::string family_dir;
    auto* divergence = app.add_subcommand("divergence", "KL/JS report for a family directory");
    divergence->add_option("--family-dir", family_dir)->required();

    std::string config_path;
    auto* experiment = app.add_subcommand("experiment", "run a Monte-Carlo experiment config");
    experiment->add_option("--config", config_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    if (winner->parsed()) {
        const Profile profile = read_profile_file(input);
        const RuleSpec rule = parse_rule(rule_text);
        const WinnerResult result = evaluate_rule(profile, rule);
        std::cout << "rule: " << rule.name() << "\n";
        std::cout << "winner: " << profile.name(result.winner) << "\n";
        for (CandidateId c = 0; c < profile.m(); ++c)
            std::cout << "score " << profile.name(c) << " "
                      << rational_to_string(result.scores[static_cast<size_t>(c)]) << "\n";
        for (const auto& event : result.trace) std::cout << "trace: " << event.describe(profile) << "\n";
        return 0;
    }

    if (mov->parsed()) {
        const Profile profile = read_profile_file(input);
        const RuleSpec rule = parse_rule(rule_text);
        const MovResult result = brute_force_mov(profile, rule, cap);
        std::cout << "rule: " << rule.name() << "\n";
        std::cout << "original winner: " << profile.name(result.original_winner) << "\n";
        if (result.exceeded_cap()) {
            std::cout << "mov: > " << result.cap << " (cap exceeded)\n";
            return 0;
        }
        std::cout << "mov: " << *result.mov << "\n";
        std::cout << "new winner: " << profile.name(result.new_winner) << "\n";
        for (const auto& entry : result.witness->removed)
            std::cout << "replace " << entry.count << " x " << ballot_text(profile, entry.ballot) << "\n";
        for (const auto& entry : result.witness->added)
            std::cout << "with " << entry.count << " x " << ballot_text(profile, entry.ballot) << "\n";
        return 0;
    }

    if (certify->parsed()) {
        const Profile profile = read_profile_file(input);
        const RuleSpec rule = parse_rule(rule_text);
        const EpsilonCertificate result = certificate_at(profile, rule, parse_rational(eps_text));
        std::cout << result.cert.describe(profile) << "\n";
        std::cout << "threshold: " << rational_to_string(result.threshold) << "\n";
        std::cout << "certificate: " << (result.holds ? "holds" : "fails") << "\n";
        if (rule.kind == RuleSpec::Kind::Stv)
            std::cout << "note: chain bounds cap the margin from above; this is a necessary condition\n";
        return 0;
    }

    if (size->parsed()) {
        const Rational eps = parse_rational(eps_text), delta = parse_rational(delta_text);
        Count ell = 0;
        std::string formula, name;
        if (rule_text == "generic") {
            ell = sample_size_generic(eps, delta, m_arg);
            formula = "ceil(2(m!)^2/eps^2 * ln(2 m!/delta))";
            name = "generic";
        } else {
            RuleSpec rule = (rule_text == "kapproval" && k_arg > 0) ? RuleSpec::k_approval(k_arg)
                                                                    : parse_rule(rule_text);
            ell = sample_size(rule, eps, delta, m_arg);
            formula = formula_text(rule);
            name = rule.name();
        }
        std::cout << "rule: " << name << "\n";
        std::cout << "m: " << m_arg << "\nepsilon: " << eps_text << "\ndelta: " << delta_text << "\n";
        std::cout << "ell: " << ell << "\n";
        std::cout << "formula: " << formula << "\n";
        return 0;
    }

    if (predict->parsed()) {
        const Profile profile = read_profile_file(input);
        const RuleSpec rule = parse_rule(rule_text);
        const Count ell = sample_size(rule, parse_rational(eps_text), parse_rational(delta_text), profile.m());
        const PredictionOutcome outcome = predict_winner(profile, rule, ell, seed);
        std::cout << "rule: " << rule.name() << "\n";
        std::cout << "ell: " << outcome.sample_size << "\n";
        std::cout << "seed: " << outcome.seed << "\n";
        std::cout << "predicted: " << profile.name(outcome.predicted) << "\n";
        return 0;
    }

    if (gen->parsed()) {
        const Rational eps = parse_rational(eps_text);
        if (family == "two") {
            namespace fs = std::filesystem;
            fs::create_directories(out_dir);
            std::ostringstream manifest;
            manifest << "family two\nm 2\nepsilon " << rational_to_string(eps) << "\nn " << gen_n << "\n";
            for (int which = 0; which < 2; ++which) {
                const Profile profile = gen_two_candidate(eps, gen_n, which);
                const std::string file = "two_member_" + std::to_string(which) + ".elect";
                write_profile_file(profile, (fs::path(out_dir) / file).string());
                manifest << "member " << which << " " << file << " winner " << which << "\n";
            }
            const std::string manifest_path = (fs::path(out_dir) / "manifest").string();
            std::ofstream out(manifest_path, std::ios::binary);
            if (!out) throw DataError("cannot write manifest '" + manifest_path + "'");
            out << manifest.str();
            std::cout << "wrote " << manifest_path << " (2 members)\n";
            return 0;
        }
        AdversarialFamily fam;
        if (family == "kapproval") fam = gen_kapproval_family(gen_m, gen_k, eps, gen_n);
        else if (family == "borda") fam = gen_borda_family(gen_m, eps, gen_n);
        else if (family == "bucklin") fam = gen_bucklin_family(gen_m, eps, gen_n);
        else throw UsageError("unknown family '" + family + "'");
        const std::string manifest = write_family_files(fam, out_dir);
        std::cout << "wrote " << manifest << " (" << fam.profiles.size() << " members)\n";
        return 0;
    }

    if (divergence->parsed()) {
        const FamilyFiles files = read_family_files(family_dir);
        std::vector<BallotDistribution> members;
        for (const Profile& profile : files.profiles) {
            BallotDistribution dist;
            dist.m = profile.m();
            dist.kind = profile.kind();
            for (const auto& entry : profile.entries())
                dist.support.emplace_back(entry.ballot, Rational(entry.count, profile.n()));
            members.push_back(std::move(dist));
        }
        std::map<Ballot, Rational> mixture;
        for (const auto& member : members)
            for (const auto& [ballot, mass] : member.support) mixture[ballot] += mass;
        BallotDistribution mix;
        mix.m = members.front().m;
        mix.kind = members.front().kind;
        for (auto& [ballot, mass] : mixture)
            mix.support.emplace_back(ballot, mass / static_cast<int>(members.size()));
        char buf[64];
        for (size_t i = 0; i < members.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.6f", kl_divergence(members[i], mix));
            std::cout << "member " << i << ": kl " << buf << "\n";
        }
        std::snprintf(buf, sizeof(buf), "%.6f", generalized_js(members));
        std::cout << "generalized-js: " << buf << "\n";
        return 0;
    }

    if (experiment->parsed()) {
        const ExperimentConfig config = read_experiment_config_file(config_path);
        const std::string base_dir = std::filesystem::path(config_path).parent_path().string();
        const Profile profile = resolve_profile(config, base_dir);
        const auto rows = run_experiment(config, profile);
        if (config.output_path.empty()) {
            write_csv(rows, std::cout);
        } else {
            std::ofstream out(config.output_path, std::ios::binary);
            if (!out) throw DataError("cannot write '" + config.output_path + "'");
            write_csv(rows, out);
            std::cout << "wrote " << config.output_path << " (" << rows.size() << " rows)\n";
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
