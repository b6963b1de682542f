#pragma once

#include "ballotbox/profile.hpp"
#include "ballotbox/rational.hpp"

#include <string>
#include <vector>

namespace ballotbox {

// Probability mass over ballots. For the subset-alphabet families the ballots
// are approval-style sorted subsets; Ranked means full rankings.
struct BallotDistribution {
    int m = 0;
    BallotKind kind = BallotKind::Ranked;
    std::vector<std::pair<Ballot, Rational>> support; // sorted by ballot, mass > 0

    void validate() const; // throws unless masses are positive and sum to 1
};

struct AdversarialFamily {
    enum class Type { KApproval, Borda, Bucklin };
    Type type = Type::KApproval;
    int m = 0;
    int k = 0; // approval size or prefix size (m/4); 0 for Borda
    Rational epsilon;
    Count n = 0;
    std::vector<BallotDistribution> members;  // one per designated winner
    std::vector<Profile> profiles;            // realized at n
    std::vector<CandidateId> intended_winners;
};

// Apportions n among support points: floor(p_i * n) each, leftover votes to
// the largest fractional remainders (ties to the earlier point). Deviates by
// less than one vote per point and sums to n exactly.
std::vector<Count> largest_remainder(const std::vector<Rational>& probs, Count n);

// Two-candidate instance: ceil((1/2+eps)*n) voters put candidate `which` on
// top. Requires eps < 1/2.
Profile gen_two_candidate(const Rational& epsilon, Count n, int which);

// mu_i over k-subsets of {c_0..c_k}: eps/C(M-1,k-1) + (1-eps)/C(M,k) on
// subsets containing c_i, (1-eps)/C(M,k) otherwise, M = k+1. Realized as
// approval profiles over m candidates.
AdversarialFamily gen_kapproval_family(int m, int k, const Rational& epsilon, Count n);

// mu_i over rankings: mass proportional to 1+eps when c_i is in the top m/2
// positions, 1-eps otherwise (normalized exactly). Realized over one
// representative per (position of c_i, rotation of the others) class, which
// preserves every positional score total and every D(c_i, .) exactly.
AdversarialFamily gen_borda_family(int m, const Rational& epsilon, Count n);

// mu_i over m/4-subsets: (1-eps)/C(m-1,m/4-1) + eps/C(m,m/4) on subsets
// containing c_i, eps/C(m,m/4) otherwise. Realized as rankings with the
// subset as prefix (index order), remaining candidates appended in index order.
AdversarialFamily gen_bucklin_family(int m, const Rational& epsilon, Count n);

// Subset ballot -> full ranking: members in index order, then the rest.
Ballot complete_to_ranking(const Ballot& subset, int m);
Profile ranked_completion(const Profile& approval_profile);

// sum_x p(x) ln(p(x)/q(x)), 0 ln 0 = 0. Throws if support(p) is not contained
// in support(q) (the divergence would be infinite).
double kl_divergence(const BallotDistribution& p, const BallotDistribution& q);

// (1/N) sum_i KL(mu_i || mean of the mu_j), equal weights.
double generalized_js(const std::vector<BallotDistribution>& members);

struct DivergenceReport {
    std::vector<double> kl_to_mixture;
    double js = 0.0;
};

// Per-member KL(mu_i || mixture) and the generalized JS divergence. The Borda
// family is evaluated through its exact two-class closed form (the mixture is
// uniform), so it stays available for m with infeasible m! supports.
DivergenceReport family_divergence_report(const AdversarialFamily& family);

} // namespace ballotbox
