#pragma once

#include "ballotbox/profile.hpp"
#include "ballotbox/rng.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace ballotbox::testutil {

// P0 := {2 x (a>b>c), 1 x (c>a>b)} over m=3, ids a=0, b=1, c=2.
inline Profile p0() {
    return make_ranked(3, {{{0, 1, 2}, 2}, {{2, 0, 1}, 1}}, {"a", "b", "c"});
}

inline std::vector<Ballot> all_rankings(int m) {
    std::vector<CandidateId> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Ballot> out;
    do {
        out.push_back(Ballot{perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline std::vector<Ballot> all_approval_sets(int m) {
    std::vector<Ballot> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        Ballot b;
        for (int c = 0; c < m; ++c)
            if (mask & (1u << c)) b.seq.push_back(c);
        out.push_back(std::move(b));
    }
    return out;
}

// Calls fn for every multiset of size n over `alphabet`, as a profile.
inline void for_each_profile(int m, BallotKind kind, const std::vector<Ballot>& alphabet, Count n,
                             const std::function<void(const Profile&)>& fn) {
    std::vector<Count> counts(alphabet.size(), 0);
    auto rec = [&](auto&& self, size_t idx, Count left) -> void {
        if (idx + 1 == alphabet.size()) {
            counts[idx] = left;
            std::vector<BallotEntry> entries;
            for (size_t i = 0; i < alphabet.size(); ++i)
                if (counts[i] > 0) entries.push_back(BallotEntry{alphabet[i], counts[i]});
            fn(Profile(m, kind, std::move(entries)));
            counts[idx] = 0;
            return;
        }
        for (Count take = 0; take <= left; ++take) {
            counts[idx] = take;
            self(self, idx + 1, left - take);
        }
        counts[idx] = 0;
    };
    rec(rec, 0, n);
}

inline Profile random_ranked_profile(Rng& rng, int m, Count n) {
    std::vector<std::pair<std::vector<CandidateId>, Count>> ballots;
    for (Count i = 0; i < n; ++i) {
        std::vector<CandidateId> perm(static_cast<size_t>(m));
        std::iota(perm.begin(), perm.end(), 0);
        for (size_t j = perm.size(); j > 1; --j)
            std::swap(perm[j - 1], perm[rng.below(j)]);
        ballots.emplace_back(std::move(perm), 1);
    }
    return make_ranked(m, std::move(ballots));
}

inline Profile random_approval_profile(Rng& rng, int m, Count n) {
    std::vector<std::pair<std::vector<CandidateId>, Count>> ballots;
    for (Count i = 0; i < n; ++i) {
        std::vector<CandidateId> set;
        for (int c = 0; c < m; ++c)
            if (rng.below(2)) set.push_back(c);
        ballots.emplace_back(std::move(set), 1);
    }
    return make_approval(m, std::move(ballots));
}

} // namespace ballotbox::testutil
