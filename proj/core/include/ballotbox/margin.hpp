#pragma once

#include "ballotbox/profile.hpp"
#include "ballotbox/rational.hpp"
#include "ballotbox/rules.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ballotbox {

// A winner-changing modification: remove `removed` from the profile, add
// `added` (both multisets of equal total count).
struct MovWitness {
    std::vector<BallotEntry> removed;
    std::vector<BallotEntry> added;
};

struct MovResult {
    std::optional<int> mov;          // empty: MOV > cap
    int cap = 0;
    std::optional<MovWitness> witness;
    CandidateId original_winner = -1;
    CandidateId new_winner = -1;     // winner after applying the witness
    long long evaluations = 0;       // search size, informational

    bool exceeded_cap() const { return !mov.has_value(); }
};

struct MovOptions {
    long long node_budget = 200'000'000; // rule evaluations before BudgetError
    TieBreak tie_break;
};

// Exhaustive minimum number of ballot replacements that changes the winner.
// Replacement ballots range over the full alphabet of the profile's kind
// (all m! rankings or all 2^m approval sets). Desk scale only.
MovResult brute_force_mov(const Profile& profile, const RuleSpec& rule, int cap,
                          const MovOptions& options = {});

Profile apply_witness(const Profile& profile, const MovWitness& witness);

enum class GapKind { ScoreGap, MaximinGap, RelativeMargin, BucklinLevels, RunoffConditions, StvChainBound };

// The structural slack the sampling theorems consume, one flavor per rule.
// `value` is the minimum slack; epsilon-parameterized kinds also say whether
// the certificate holds. `degenerate` marks the m=1 "+infinity" case.
struct GapCertificate {
    RuleSpec rule;
    GapKind kind = GapKind::ScoreGap;
    Rational value = Rational(0);
    bool holds = true;
    bool degenerate = false;
    CandidateId winner = -1;
    std::vector<Rational> per_candidate;            // per-x gaps / RM(w,x) / Bucklin levels
    std::vector<std::optional<Rational>> slacks;    // runoff: per-condition slack, empty = vacuous
    std::string describe(const Profile& profile) const;
};

// min_x s(w)-s(x) in the rule's normalized score semantics
// (approval counts, or canonical positional scores with alpha_1 = 1).
GapCertificate approval_gap(const Profile& profile, const RuleSpec& rule);

// min_x maximin(w) - maximin(x).
GapCertificate maximin_gap(const Profile& profile);

// s'_t(V,x) = |{y != x : D(y,x) < 2t}| + alpha*|{y != x : D(y,x) = 2t}|,
// computed exactly in rationals.
Rational s_prime(const PairwiseTallies& tallies, CandidateId x, Count t, const Rational& alpha);

// RM(x,y): minimum integer t in [-n, n] with s'_{-t}(V,x) <= s'_t(V,y).
Count relative_margin(const Profile& profile, CandidateId x, CandidateId y, const Rational& alpha);

// Gamma = min_{x != w} RM(w, x) for the Copeland^alpha winner w.
GapCertificate gamma(const Profile& profile, const Rational& alpha);

// b_w = min{i : s_i(w) >= n/2 + eps*n/3}, b_x with threshold n/2 - eps*n/3;
// holds iff b_w < b_x for every x != w.
GapCertificate bucklin_levels(const Profile& profile, const Rational& epsilon);

// The three runoff conditions, with per-condition slack:
//   (1) D(w,r) > 2*eps*n
//   (2) for all x not in {w,r}: 2 s(w) > s(x) + s(r) + eps*n
//   (3) for all x with s(x) > s(r) - eps*n/2: D(w,x) > eps*n/2
// where w is the runoff winner, r the other finalist, s the plurality score.
GapCertificate runoff_conditions(const Profile& profile, const Rational& epsilon);

// sum_i [ s_V(C_-i, x_{i+1}) - s*_V(C_-i) ] along an elimination chain; an
// upper bound on the margin of victory for STV. `order` must be a permutation
// not ending at the winner.
Count stv_chain_bound(const Profile& profile, const std::vector<CandidateId>& order);

// Minimum chain bound over all valid orders (m <= 8).
Count min_stv_chain_bound(const Profile& profile);

// The rule's certificate compared against the slack its sampling bound
// consumes: score gap >= eps*n (approval) or eps*n/2 (positional rules,
// canonical alpha_1 = 1); maximin gap >= eps*n; Gamma >= eps*n/(2(ceil(log2
// m)+1)); the Bucklin/runoff epsilon-certificates as themselves. For STV the
// check is min chain bound >= eps*n, which is only a necessary condition
// (chains bound MOV from above).
struct EpsilonCertificate {
    GapCertificate cert;
    Rational threshold;
    bool holds = false;
};
EpsilonCertificate certificate_at(const Profile& profile, const RuleSpec& rule, const Rational& epsilon);

} // namespace ballotbox
