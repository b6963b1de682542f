#pragma once

#include "ballotbox/profile.hpp"
#include "ballotbox/rational.hpp"
#include "ballotbox/rng.hpp"
#include "ballotbox/rules.hpp"

#include <cstdint>
#include <functional>

namespace ballotbox {

struct SampleSizeRequest {
    RuleSpec rule;
    Rational epsilon; // in (0, 1]
    Rational delta;   // in (0, 1)
    int m = 0;        // m >= 2
};

struct PredictionOutcome {
    CandidateId predicted = -1;
    Count sample_size = 0;
    std::uint64_t seed = 0;
};

// Multiset of ell i.i.d. draws from the profile (each ballot with probability
// count/n), in canonical Profile form. Deterministic in (profile, ell, seed).
Profile sample_votes(const Profile& profile, Count ell, std::uint64_t seed);

// Runs the rule on a sample of ell votes; same tie-break as the full election.
PredictionOutcome predict_winner(const Profile& profile, const RuleSpec& rule, Count ell,
                                 std::uint64_t seed);

// Same, for an arbitrary (homogeneous) rule supplied as a function.
using CustomRule = std::function<CandidateId(const Profile&)>;
PredictionOutcome predict_winner_custom(const Profile& profile, const CustomRule& rule, Count ell,
                                        std::uint64_t seed);

// Explicit sample sizes sufficient for (eps, delta)-winner determination, one
// Chernoff-plus-union-bound formula per rule; see sampler.cpp for the
// per-formula derivations. Always >= 1.
Count sample_size(const SampleSizeRequest& request);
Count sample_size(const RuleSpec& rule, const Rational& epsilon, const Rational& delta, int m);

// Bound for any homogeneous rule: every ballot-type frequency estimated to
// within eps/(2*m!).
Count sample_size_generic(const Rational& epsilon, const Rational& delta, int m);

// Max empirical frequency over sample_size(plurality) i.i.d. draws from a
// black-box symbol source; within eps of the true max probability w.p. 1-delta.
Rational estimate_linf(const std::function<int(Rng&)>& source, const Rational& epsilon,
                       const Rational& delta, std::uint64_t seed);

} // namespace ballotbox
