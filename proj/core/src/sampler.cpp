#include "ballotbox/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ballotbox {

namespace {

void check_params(const Rational& epsilon, const Rational& delta, int m) {
    if (epsilon <= 0 || epsilon > 1) throw UsageError("epsilon must be in (0,1]");
    if (delta <= 0 || delta >= 1) throw UsageError("delta must be in (0,1)");
    if (m < 2) throw UsageError("m must be at least 2");
}

Count ceil_to_count(double x) {
    const double c = std::ceil(x);
    return c < 1.0 ? 1 : static_cast<Count>(c);
}

int ceil_log2(int m) {
    int l = 0;
    while ((1 << l) < m) ++l;
    return l;
}

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

} // namespace

Profile sample_votes(const Profile& profile, Count ell, std::uint64_t seed) {
    if (ell < 1) throw UsageError("sample size must be at least 1");
    const auto& entries = profile.entries();
    std::vector<Count> cumulative;
    cumulative.reserve(entries.size());
    Count running = 0;
    for (const auto& e : entries) {
        running += e.count;
        cumulative.push_back(running);
    }
    std::vector<Count> drawn(entries.size(), 0);
    Rng rng(seed);
    const auto n = static_cast<std::uint64_t>(profile.n());
    for (Count i = 0; i < ell; ++i) {
        const auto u = static_cast<Count>(rng.below(n));
        const size_t idx = static_cast<size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        ++drawn[idx];
    }
    std::vector<BallotEntry> sampled;
    for (size_t i = 0; i < entries.size(); ++i)
        if (drawn[i] > 0) sampled.push_back(BallotEntry{entries[i].ballot, drawn[i]});
    return Profile::from_canonical_unchecked(profile.m(), profile.kind(), std::move(sampled),
                                             profile.names());
}

PredictionOutcome predict_winner(const Profile& profile, const RuleSpec& rule, Count ell,
                                 std::uint64_t seed) {
    const Profile sample = sample_votes(profile, ell, seed);
    return PredictionOutcome{evaluate_winner(sample, rule), ell, seed};
}

PredictionOutcome predict_winner_custom(const Profile& profile, const CustomRule& rule, Count ell,
                                        std::uint64_t seed) {
    const Profile sample = sample_votes(profile, ell, seed);
    return PredictionOutcome{rule(sample), ell, seed};
}

Count sample_size(const RuleSpec& rule, const Rational& epsilon, const Rational& delta, int m) {
    check_params(epsilon, delta, m);
    const double eps = to_double(epsilon);
    const double del = to_double(delta);
    const double eps2 = eps * eps;
    switch (rule.kind) {
        case RuleSpec::Kind::Plurality:
            // multiplicative bound at quarter-gap accuracy; the per-candidate
            // failure sum is maximized by one candidate holding all n votes
            return ceil_to_count(48.0 / eps2 * std::log(2.0 / del));
        case RuleSpec::Kind::KApproval: {
            if (rule.k < 1 || rule.k > m - 1) throw UsageError("k-approval requires 1 <= k <= m-1");
            // as plurality; with sum s(x) = kn the failure sum is maximized by
            // k full candidates (exp(-c/s) is superadditive), union factor 2k
            return ceil_to_count(48.0 / eps2 * std::log(2.0 * rule.k / del));
        }
        case RuleSpec::Kind::Scoring:
        case RuleSpec::Kind::Borda:
            // additive bound on [0,1] positional averages at accuracy eps*n/4
            // against a score gap of eps*n/2; union over 2m candidates
            return ceil_to_count(8.0 / eps2 * std::log(2.0 * m / del));
        case RuleSpec::Kind::Approval:
            // additive at accuracy eps*n/2 against a gap of eps*n; union 2m
            return ceil_to_count(2.0 / eps2 * std::log(2.0 * m / del));
        case RuleSpec::Kind::Maximin:
            // every D(x,y) within eps*n/2; union over all ordered pairs
            return ceil_to_count(8.0 / eps2 * std::log(4.0 * m * m / del));
        case RuleSpec::Kind::Copeland: {
            // every D(x,y) within eps*n/(5(ceil(log2 m)+1)), the slack the
            // relative-margin certificate needs
            const double lg = ceil_log2(m) + 1;
            return ceil_to_count(50.0 * lg * lg / eps2 * std::log(4.0 * m * m / del));
        }
        case RuleSpec::Kind::Bucklin:
            // prefix counts within quarter-gap accuracy for every candidate
            // and level; union over m^2 (candidate, level) events
            return ceil_to_count(8.0 / eps2 * std::log(4.0 * m * m / del));
        case RuleSpec::Kind::PluralityRunoff:
            // plurality scores and the finalists' pairwise margin within eps*n/5
            return ceil_to_count(75.0 / eps2 * std::log(8.0 / del));
        case RuleSpec::Kind::Stv:
            // restricted plurality within eps*n/m over all m*2^(m+1) alive-set events
            return ceil_to_count(3.0 * m * m / eps2 * ((m + 1) * std::log(2.0) + std::log(2.0 * m / del)));
    }
    throw UsageError("no sample-size formula for rule " + rule.name());
}

Count sample_size(const SampleSizeRequest& request) {
    return sample_size(request.rule, request.epsilon, request.delta, request.m);
}

Count sample_size_generic(const Rational& epsilon, const Rational& delta, int m) {
    check_params(epsilon, delta, m);
    if (m > 20) throw UsageError("generic bound limited to m <= 20");
    const double eps = to_double(epsilon);
    const double del = to_double(delta);
    const double mf = factorial(m);
    // every ballot-type frequency within eps/(2*m!); union over 2*m! types
    return ceil_to_count(2.0 * mf * mf / (eps * eps) * std::log(2.0 * mf / del));
}

Rational estimate_linf(const std::function<int(Rng&)>& source, const Rational& epsilon,
                       const Rational& delta, std::uint64_t seed) {
    const Count ell = sample_size(RuleSpec::plurality(), epsilon, delta, 2);
    Rng rng(seed);
    std::map<int, Count> counts;
    Count max_count = 0;
    for (Count i = 0; i < ell; ++i) {
        const Count c = ++counts[source(rng)];
        max_count = std::max(max_count, c);
    }
    return Rational(max_count, ell);
}

} // namespace ballotbox
