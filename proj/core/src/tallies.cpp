#include "ballotbox/tallies.hpp"

#include <algorithm>

namespace ballotbox {

namespace {

void require_ranked(const Profile& profile, const char* op) {
    if (profile.kind() != BallotKind::Ranked)
        throw UsageError(std::string(op) + " requires a ranked profile");
}

} // namespace

PairwiseTallies pairwise_tallies(const Profile& profile) {
    require_ranked(profile, "pairwise_tallies");
    const int m = profile.m();
    PairwiseTallies t;
    t.m = m;
    t.N.assign(static_cast<size_t>(m) * m, 0);
    t.D.assign(static_cast<size_t>(m) * m, 0);
    for (const auto& e : profile.entries()) {
        const auto& order = e.ballot.seq;
        for (size_t i = 0; i < order.size(); ++i)
            for (size_t j = i + 1; j < order.size(); ++j)
                t.N[static_cast<size_t>(order[i]) * m + order[j]] += e.count;
    }
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            t.D[static_cast<size_t>(x) * m + y] =
                t.N[static_cast<size_t>(x) * m + y] - t.N[static_cast<size_t>(y) * m + x];
    return t;
}

std::vector<Rational> positional_scores(const Profile& profile, const ScoreVector& sv) {
    require_ranked(profile, "positional_scores");
    if (sv.m() != profile.m()) throw UsageError("score vector length must equal candidate count");
    std::vector<Rational> scores(static_cast<size_t>(profile.m()), Rational(0));
    for (const auto& e : profile.entries()) {
        const auto& order = e.ballot.seq;
        for (size_t pos = 0; pos < order.size(); ++pos)
            scores[static_cast<size_t>(order[pos])] += sv.alpha(static_cast<int>(pos)) * e.count;
    }
    return scores;
}

std::vector<Count> approval_scores(const Profile& profile) {
    if (profile.kind() != BallotKind::Approval)
        throw UsageError("approval_scores requires an approval profile");
    std::vector<Count> scores(static_cast<size_t>(profile.m()), 0);
    for (const auto& e : profile.entries())
        for (CandidateId c : e.ballot.seq) scores[static_cast<size_t>(c)] += e.count;
    return scores;
}

std::vector<Count> top_k_counts(const Profile& profile, int k) {
    require_ranked(profile, "top_k_counts");
    if (k < 1 || k > profile.m()) throw UsageError("top_k_counts requires 1 <= k <= m");
    std::vector<Count> counts(static_cast<size_t>(profile.m()), 0);
    for (const auto& e : profile.entries())
        for (int pos = 0; pos < k; ++pos)
            counts[static_cast<size_t>(e.ballot.seq[static_cast<size_t>(pos)])] += e.count;
    return counts;
}

std::vector<Count> restricted_plurality(const Profile& profile, const std::vector<CandidateId>& alive) {
    require_ranked(profile, "restricted_plurality");
    if (alive.empty()) throw UsageError("alive set must be non-empty");
    std::vector<char> is_alive(static_cast<size_t>(profile.m()), 0);
    for (CandidateId c : alive) {
        if (c < 0 || c >= profile.m()) throw UsageError("alive candidate out of range");
        is_alive[static_cast<size_t>(c)] = 1;
    }
    std::vector<Count> scores(static_cast<size_t>(profile.m()), 0);
    for (const auto& e : profile.entries()) {
        for (CandidateId c : e.ballot.seq) {
            if (is_alive[static_cast<size_t>(c)]) {
                scores[static_cast<size_t>(c)] += e.count;
                break;
            }
        }
    }
    return scores;
}

} // namespace ballotbox
