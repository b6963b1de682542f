#pragma once

#include "ballotbox/profile.hpp"
#include "ballotbox/rational.hpp"
#include "ballotbox/score_vector.hpp"
#include "ballotbox/tallies.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ballotbox {

// Which voting rule to run, with parameters.
struct RuleSpec {
    enum class Kind {
        Plurality,
        KApproval,
        Scoring,
        Borda,
        Approval,
        Maximin,
        Copeland,
        Bucklin,
        PluralityRunoff,
        Stv,
    };

    Kind kind = Kind::Plurality;
    int k = 0;                           // KApproval: 1 <= k <= m-1
    Rational alpha = Rational(1, 2);     // Copeland: in [0,1]
    std::optional<ScoreVector> vec;      // Scoring

    static RuleSpec plurality() { return {Kind::Plurality, 0, Rational(0), std::nullopt}; }
    static RuleSpec k_approval(int k) { return {Kind::KApproval, k, Rational(0), std::nullopt}; }
    static RuleSpec scoring(ScoreVector sv) { return {Kind::Scoring, 0, Rational(0), std::move(sv)}; }
    static RuleSpec borda() { return {Kind::Borda, 0, Rational(0), std::nullopt}; }
    static RuleSpec approval() { return {Kind::Approval, 0, Rational(0), std::nullopt}; }
    static RuleSpec maximin() { return {Kind::Maximin, 0, Rational(0), std::nullopt}; }
    static RuleSpec copeland(Rational a) { return {Kind::Copeland, 0, std::move(a), std::nullopt}; }
    static RuleSpec bucklin() { return {Kind::Bucklin, 0, Rational(0), std::nullopt}; }
    static RuleSpec runoff() { return {Kind::PluralityRunoff, 0, Rational(0), std::nullopt}; }
    static RuleSpec stv() { return {Kind::Stv, 0, Rational(0), std::nullopt}; }

    bool needs_approval_profile() const { return kind == Kind::Approval; }
    std::string name() const;
};

// Parses "plurality", "kapproval:2", "scoring:2,1,0", "copeland:1/2", "borda",
// "approval", "maximin", "bucklin", "runoff", "stv".
RuleSpec parse_rule(const std::string& text);

struct TraceEvent {
    enum class Kind { TieBreak, Eliminate, Finalists, RunoffDecision, Level };
    Kind kind;
    int round = 0;                   // STV round / Bucklin level, 0 when n/a
    std::vector<CandidateId> among;  // the tied or compared set
    CandidateId chosen = -1;
    std::string describe(const Profile& profile) const;
};

// Winner plus per-candidate scores in the rule's own semantics:
//   positional/approval counts; maximin scores min_y D(x,y); Copeland scores
//   wins + alpha*ties; Bucklin levels; round-1 plurality (runoff); the round a
//   candidate was eliminated in, with m for the survivor (STV).
struct WinnerResult {
    CandidateId winner = -1;
    std::vector<Rational> scores;
    std::vector<TraceEvent> trace;
};

WinnerResult evaluate_rule(const Profile& profile, const RuleSpec& rule, const TieBreak& tb = {});

// Winner without scores/trace; same selection logic, used by search loops.
CandidateId evaluate_winner(const Profile& profile, const RuleSpec& rule, const TieBreak& tb = {});

// The candidate with D(x,y) > 0 against every other, if any.
std::optional<CandidateId> condorcet_winner(const Profile& profile);

std::vector<Rational> score_table(const Profile& profile, const RuleSpec& rule);

} // namespace ballotbox
