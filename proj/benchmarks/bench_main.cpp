#include <benchmark/benchmark.h>

#include "ballotbox/adversary.hpp"
#include "ballotbox/experiment.hpp"
#include "ballotbox/margin.hpp"
#include "ballotbox/sampler.hpp"
#include "ballotbox/tallies.hpp"

using namespace ballotbox;

namespace {

Profile coverage_profile(int m, Count n) {
    std::vector<CandidateId> fwd, rev;
    for (int i = 0; i < m; ++i) fwd.push_back(i);
    rev.assign(fwd.rbegin(), fwd.rend());
    return make_ranked(m, {{fwd, n * 11 / 20}, {rev, n - n * 11 / 20}});
}

void BM_SampleVotes(benchmark::State& state) {
    const Profile profile = coverage_profile(8, 10000);
    const Count ell = state.range(0);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_votes(profile, ell, seed++));
    }
    state.SetItemsProcessed(state.iterations() * ell);
}
BENCHMARK(BM_SampleVotes)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_EvaluateRule(benchmark::State& state) {
    const Profile profile = sample_votes(coverage_profile(8, 10000), 20000, 7);
    const std::vector<RuleSpec> rules = {RuleSpec::plurality(), RuleSpec::borda(),
                                         RuleSpec::maximin(),   RuleSpec::copeland(Rational(1, 2)),
                                         RuleSpec::bucklin(),   RuleSpec::runoff(),
                                         RuleSpec::stv()};
    const RuleSpec rule = rules[static_cast<size_t>(state.range(0))];
    state.SetLabel(rule.name());
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_winner(profile, rule));
    }
}
BENCHMARK(BM_EvaluateRule)->DenseRange(0, 6);

void BM_PairwiseTallies(benchmark::State& state) {
    const Profile profile = sample_votes(coverage_profile(static_cast<int>(state.range(0)), 10000), 5000, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pairwise_tallies(profile));
    }
}
BENCHMARK(BM_PairwiseTallies)->Arg(4)->Arg(8)->Arg(16);

void BM_PredictWinner(benchmark::State& state) {
    const Profile profile = coverage_profile(8, 10000);
    const Count ell = sample_size(RuleSpec::borda(), Rational(1, 10), Rational(1, 20), 8);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_winner(profile, RuleSpec::borda(), ell, seed++));
    }
    state.SetItemsProcessed(state.iterations() * ell);
}
BENCHMARK(BM_PredictWinner);

void BM_BruteForceMov(benchmark::State& state) {
    Rng rng(5);
    const Profile profile = [&] {
        std::vector<std::pair<std::vector<CandidateId>, Count>> ballots;
        for (int i = 0; i < 6; ++i) {
            std::vector<CandidateId> p = {0, 1, 2, 3};
            for (size_t j = p.size(); j > 1; --j) std::swap(p[j - 1], p[rng.below(j)]);
            ballots.emplace_back(p, 1);
        }
        return make_ranked(4, ballots);
    }();
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_mov(profile, RuleSpec::stv(), 3));
    }
}
BENCHMARK(BM_BruteForceMov);

// wall time should scale linearly in trials x ell
void BM_ExperimentScaling(benchmark::State& state) {
    ExperimentConfig config;
    config.generator = "two-candidate 10000 0";
    config.rule = RuleSpec::plurality();
    config.epsilon = Rational(1, 10);
    config.delta = Rational(1, 20);
    config.schedule = {state.range(0)};
    config.trials = 100;
    config.master_seed = 17;
    const Profile profile = resolve_profile(config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_experiment(config, profile));
    }
    state.SetItemsProcessed(state.iterations() * config.trials * state.range(0));
}
BENCHMARK(BM_ExperimentScaling)->Arg(2000)->Arg(8000)->Arg(32000)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
