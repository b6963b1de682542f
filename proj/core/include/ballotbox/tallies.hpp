#pragma once

#include "ballotbox/profile.hpp"
#include "ballotbox/rational.hpp"
#include "ballotbox/score_vector.hpp"

#include <vector>

namespace ballotbox {

// Weighted majority graph of a ranked profile.
// N(x,y) = voters preferring x to y; D(x,y) = N(x,y) - N(y,x).
struct PairwiseTallies {
    int m = 0;
    std::vector<Count> N; // row-major m*m, diagonal zero
    std::vector<Count> D;

    Count n_at(CandidateId x, CandidateId y) const { return N[static_cast<size_t>(x) * m + y]; }
    Count d_at(CandidateId x, CandidateId y) const { return D[static_cast<size_t>(x) * m + y]; }
};

PairwiseTallies pairwise_tallies(const Profile& profile);

// Positional scores under a canonical score vector (alpha_1=1, alpha_m=0).
std::vector<Rational> positional_scores(const Profile& profile, const ScoreVector& sv);

// Approval counts per candidate.
std::vector<Count> approval_scores(const Profile& profile);

// s_k(x): number of votes ranking x within the first k positions.
std::vector<Count> top_k_counts(const Profile& profile, int k);

// Plurality scores with ballots restricted to the alive set; candidates not in
// `alive` get 0. Sums to n over the alive set.
std::vector<Count> restricted_plurality(const Profile& profile, const std::vector<CandidateId>& alive);

} // namespace ballotbox
