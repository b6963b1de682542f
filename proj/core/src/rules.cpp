#include "ballotbox/rules.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace ballotbox {

namespace {

std::vector<int> ranks_of(const TieBreak& tb, int m) { return tb.ranks(m); }

// Argmax (or argmin) over an integer score array; ties go to the candidate
// with the smallest tie-break rank. Returns the tied set via `tied`.
template <typename T>
CandidateId pick(const std::vector<T>& vals, const std::vector<int>& tbr, bool maximize,
                 std::vector<CandidateId>* tied) {
    CandidateId best = 0;
    for (CandidateId c = 1; c < static_cast<CandidateId>(vals.size()); ++c) {
        const bool better = maximize ? vals[static_cast<size_t>(c)] > vals[static_cast<size_t>(best)]
                                     : vals[static_cast<size_t>(c)] < vals[static_cast<size_t>(best)];
        const bool equal = vals[static_cast<size_t>(c)] == vals[static_cast<size_t>(best)];
        if (better || (equal && tbr[static_cast<size_t>(c)] < tbr[static_cast<size_t>(best)])) best = c;
    }
    if (tied) {
        tied->clear();
        for (CandidateId c = 0; c < static_cast<CandidateId>(vals.size()); ++c)
            if (vals[static_cast<size_t>(c)] == vals[static_cast<size_t>(best)]) tied->push_back(c);
    }
    return best;
}

template <typename T>
CandidateId pick_subset(const std::vector<T>& vals, const std::vector<char>& mask,
                        const std::vector<int>& tbr, bool maximize, std::vector<CandidateId>* tied) {
    CandidateId best = -1;
    for (CandidateId c = 0; c < static_cast<CandidateId>(vals.size()); ++c) {
        if (!mask[static_cast<size_t>(c)]) continue;
        if (best < 0) {
            best = c;
            continue;
        }
        const bool better = maximize ? vals[static_cast<size_t>(c)] > vals[static_cast<size_t>(best)]
                                     : vals[static_cast<size_t>(c)] < vals[static_cast<size_t>(best)];
        const bool equal = vals[static_cast<size_t>(c)] == vals[static_cast<size_t>(best)];
        if (better || (equal && tbr[static_cast<size_t>(c)] < tbr[static_cast<size_t>(best)])) best = c;
    }
    if (tied) {
        tied->clear();
        for (CandidateId c = 0; c < static_cast<CandidateId>(vals.size()); ++c)
            if (mask[static_cast<size_t>(c)] && vals[static_cast<size_t>(c)] == vals[static_cast<size_t>(best)])
                tied->push_back(c);
    }
    return best;
}

void require_kind(const Profile& profile, const RuleSpec& rule) {
    if (rule.needs_approval_profile()) {
        if (profile.kind() != BallotKind::Approval)
            throw UsageError("approval rule requires an approval profile");
    } else if (profile.kind() != BallotKind::Ranked) {
        throw UsageError(rule.name() + " requires a ranked profile");
    }
}

void note_tie(WinnerResult* out, const std::vector<CandidateId>& tied, CandidateId chosen, int round = 0) {
    if (out && tied.size() > 1)
        out->trace.push_back(TraceEvent{TraceEvent::Kind::TieBreak, round, tied, chosen});
}

void store_scores(WinnerResult* out, const std::vector<Count>& scores, Count denom = 1) {
    if (!out) return;
    out->scores.reserve(scores.size());
    for (Count s : scores) out->scores.emplace_back(Rational(s, denom));
}

// Integer positional weights for a canonical score vector when the common
// denominator is small; empty if it is not.
std::vector<Count> integer_weights(const ScoreVector& sv) {
    BigInt lcm = 1;
    for (const Rational& a : sv.alphas())
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(a));
    if (lcm > 1'000'000) return {};
    std::vector<Count> w;
    w.reserve(static_cast<size_t>(sv.m()));
    for (const Rational& a : sv.alphas()) {
        Rational scaled = a * Rational(lcm);
        w.push_back(boost::multiprecision::numerator(scaled).convert_to<Count>());
    }
    w.push_back(lcm.convert_to<Count>()); // trailing slot carries the scale
    return w;
}

CandidateId scored_winner(const Profile& profile, const ScoreVector& sv, const std::vector<int>& tbr,
                          WinnerResult* out) {
    if (sv.m() != profile.m()) throw UsageError("score vector length must equal candidate count");
    const std::vector<Count> w = integer_weights(sv);
    std::vector<CandidateId> tied;
    if (!w.empty()) {
        const Count scale = w.back();
        std::vector<Count> scores(static_cast<size_t>(profile.m()), 0);
        for (const auto& e : profile.entries())
            for (size_t pos = 0; pos < e.ballot.seq.size(); ++pos)
                scores[static_cast<size_t>(e.ballot.seq[pos])] += w[pos] * e.count;
        const CandidateId winner = pick(scores, tbr, true, &tied);
        store_scores(out, scores, scale);
        note_tie(out, tied, winner);
        return winner;
    }
    const std::vector<Rational> scores = positional_scores(profile, sv);
    const CandidateId winner = pick(scores, tbr, true, &tied);
    if (out) out->scores = scores;
    note_tie(out, tied, winner);
    return winner;
}

CandidateId eval_core(const Profile& profile, const RuleSpec& rule, const TieBreak& tb, WinnerResult* out) {
    require_kind(profile, rule);
    const int m = profile.m();
    const std::vector<int> tbr = ranks_of(tb, m);
    std::vector<CandidateId> tied;

    switch (rule.kind) {
        case RuleSpec::Kind::Plurality: {
            const std::vector<Count> scores = top_k_counts(profile, 1);
            const CandidateId winner = pick(scores, tbr, true, &tied);
            store_scores(out, scores);
            note_tie(out, tied, winner);
            return winner;
        }
        case RuleSpec::Kind::KApproval: {
            if (rule.k < 1 || rule.k > m - 1) throw UsageError("k-approval requires 1 <= k <= m-1");
            const std::vector<Count> scores = top_k_counts(profile, rule.k);
            const CandidateId winner = pick(scores, tbr, true, &tied);
            store_scores(out, scores);
            note_tie(out, tied, winner);
            return winner;
        }
        case RuleSpec::Kind::Scoring: {
            if (!rule.vec) throw UsageError("scoring rule needs a score vector");
            return scored_winner(profile, *rule.vec, tbr, out);
        }
        case RuleSpec::Kind::Borda:
            return scored_winner(profile, ScoreVector::borda(m), tbr, out);
        case RuleSpec::Kind::Approval: {
            const std::vector<Count> scores = approval_scores(profile);
            const CandidateId winner = pick(scores, tbr, true, &tied);
            store_scores(out, scores);
            note_tie(out, tied, winner);
            return winner;
        }
        case RuleSpec::Kind::Maximin: {
            const PairwiseTallies t = pairwise_tallies(profile);
            std::vector<Count> scores(static_cast<size_t>(m), std::numeric_limits<Count>::max());
            if (m == 1) scores[0] = 0;
            for (CandidateId x = 0; x < m; ++x)
                for (CandidateId y = 0; y < m; ++y)
                    if (x != y) scores[static_cast<size_t>(x)] = std::min(scores[static_cast<size_t>(x)], t.d_at(x, y));
            const CandidateId winner = pick(scores, tbr, true, &tied);
            store_scores(out, scores);
            note_tie(out, tied, winner);
            return winner;
        }
        case RuleSpec::Kind::Copeland: {
            if (rule.alpha < 0 || rule.alpha > 1) throw UsageError("copeland alpha must be in [0,1]");
            const Count p = boost::multiprecision::numerator(rule.alpha).convert_to<Count>();
            const Count q = boost::multiprecision::denominator(rule.alpha).convert_to<Count>();
            const PairwiseTallies t = pairwise_tallies(profile);
            // score*q = q*wins + p*ties, exact
            std::vector<Count> scaled(static_cast<size_t>(m), 0);
            for (CandidateId x = 0; x < m; ++x)
                for (CandidateId y = 0; y < m; ++y) {
                    if (x == y) continue;
                    const Count d = t.d_at(x, y);
                    if (d > 0) scaled[static_cast<size_t>(x)] += q;
                    else if (d == 0) scaled[static_cast<size_t>(x)] += p;
                }
            const CandidateId winner = pick(scaled, tbr, true, &tied);
            store_scores(out, scaled, q);
            note_tie(out, tied, winner);
            return winner;
        }
        case RuleSpec::Kind::Bucklin: {
            // level(x) = min l with 2*s_l(x) > n; s_m(x) = n so it exists.
            const Count n = profile.n();
            std::vector<Count> levels(static_cast<size_t>(m), m);
            std::vector<Count> cum(static_cast<size_t>(m), 0);
            std::vector<char> done(static_cast<size_t>(m), 0);
            int remaining = m;
            for (int l = 1; l <= m && remaining > 0; ++l) {
                for (const auto& e : profile.entries())
                    cum[static_cast<size_t>(e.ballot.seq[static_cast<size_t>(l - 1)])] += e.count;
                for (CandidateId c = 0; c < m; ++c) {
                    if (!done[static_cast<size_t>(c)] && 2 * cum[static_cast<size_t>(c)] > n) {
                        levels[static_cast<size_t>(c)] = l;
                        done[static_cast<size_t>(c)] = 1;
                        --remaining;
                    }
                }
            }
            const CandidateId winner = pick(levels, tbr, false, &tied);
            store_scores(out, levels);
            note_tie(out, tied, winner);
            if (out)
                out->trace.push_back(TraceEvent{TraceEvent::Kind::Level,
                                                static_cast<int>(levels[static_cast<size_t>(winner)]),
                                                {},
                                                winner});
            return winner;
        }
        case RuleSpec::Kind::PluralityRunoff: {
            const std::vector<Count> scores = top_k_counts(profile, 1);
            if (m == 1) {
                store_scores(out, scores);
                return 0;
            }
            const CandidateId first = pick(scores, tbr, true, &tied);
            note_tie(out, tied, first);
            std::vector<char> rest(static_cast<size_t>(m), 1);
            rest[static_cast<size_t>(first)] = 0;
            const CandidateId second = pick_subset(scores, rest, tbr, true, &tied);
            note_tie(out, tied, second);
            if (out)
                out->trace.push_back(TraceEvent{TraceEvent::Kind::Finalists, 0, {first, second}, first});
            const PairwiseTallies t = pairwise_tallies(profile);
            const Count d = t.d_at(first, second);
            CandidateId winner;
            if (d > 0) winner = first;
            else if (d < 0) winner = second;
            else winner = tbr[static_cast<size_t>(first)] < tbr[static_cast<size_t>(second)] ? first : second;
            if (out) {
                out->trace.push_back(TraceEvent{TraceEvent::Kind::RunoffDecision, 0, {first, second}, winner});
                if (d == 0) note_tie(out, {first, second}, winner);
            }
            store_scores(out, scores);
            return winner;
        }
        case RuleSpec::Kind::Stv: {
            std::vector<char> alive(static_cast<size_t>(m), 1);
            std::vector<Count> eliminated_round(static_cast<size_t>(m), m);
            std::vector<CandidateId> alive_list(static_cast<size_t>(m));
            std::iota(alive_list.begin(), alive_list.end(), 0);
            for (int round = 1; round <= m - 1; ++round) {
                const std::vector<Count> scores = restricted_plurality(profile, alive_list);
                const CandidateId loser = pick_subset(scores, alive, tbr, false, &tied);
                note_tie(out, tied, loser, round);
                if (out)
                    out->trace.push_back(TraceEvent{TraceEvent::Kind::Eliminate, round, tied, loser});
                alive[static_cast<size_t>(loser)] = 0;
                eliminated_round[static_cast<size_t>(loser)] = round;
                alive_list.erase(std::find(alive_list.begin(), alive_list.end(), loser));
            }
            const CandidateId winner = alive_list.front();
            store_scores(out, eliminated_round);
            return winner;
        }
    }
    throw UsageError("unknown rule");
}

} // namespace

std::string RuleSpec::name() const {
    switch (kind) {
        case Kind::Plurality: return "plurality";
        case Kind::KApproval: return "kapproval(" + std::to_string(k) + ")";
        case Kind::Scoring: {
            std::string s = "scoring(";
            for (int i = 0; i < vec->m(); ++i) {
                if (i) s += ";";
                s += rational_to_string(vec->alpha(i));
            }
            return s + ")";
        }
        case Kind::Borda: return "borda";
        case Kind::Approval: return "approval";
        case Kind::Maximin: return "maximin";
        case Kind::Copeland: return "copeland(" + rational_to_string(alpha) + ")";
        case Kind::Bucklin: return "bucklin";
        case Kind::PluralityRunoff: return "runoff";
        case Kind::Stv: return "stv";
    }
    return "?";
}

RuleSpec parse_rule(const std::string& text) {
    std::string base = text, arg;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        base = text.substr(0, colon);
        arg = text.substr(colon + 1);
    }
    std::transform(base.begin(), base.end(), base.begin(), [](unsigned char c) { return std::tolower(c); });
    if (base == "plurality") return RuleSpec::plurality();
    if (base == "kapproval" || base == "k-approval") {
        if (arg.empty()) throw UsageError("kapproval needs k, e.g. kapproval:2");
        return RuleSpec::k_approval(std::stoi(arg));
    }
    if (base == "scoring") {
        if (arg.empty()) throw UsageError("scoring needs a vector, e.g. scoring:2,1,0");
        std::vector<Rational> alphas;
        std::stringstream ss(arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) alphas.push_back(parse_rational(tok));
        return RuleSpec::scoring(ScoreVector(std::move(alphas)));
    }
    if (base == "borda") return RuleSpec::borda();
    if (base == "approval") return RuleSpec::approval();
    if (base == "maximin") return RuleSpec::maximin();
    if (base == "copeland") return RuleSpec::copeland(arg.empty() ? Rational(1, 2) : parse_rational(arg));
    if (base == "bucklin") return RuleSpec::bucklin();
    if (base == "runoff" || base == "plurality-runoff") return RuleSpec::runoff();
    if (base == "stv") return RuleSpec::stv();
    throw UsageError("unknown rule '" + text + "'");
}

std::string TraceEvent::describe(const Profile& profile) const {
    auto list = [&](const std::vector<CandidateId>& cs) {
        std::string s;
        for (size_t i = 0; i < cs.size(); ++i) {
            if (i) s += ",";
            s += profile.name(cs[i]);
        }
        return s;
    };
    switch (kind) {
        case Kind::TieBreak:
            return "tie among {" + list(among) + "} broken for " + profile.name(chosen);
        case Kind::Eliminate:
            return "round " + std::to_string(round) + ": eliminated " + profile.name(chosen);
        case Kind::Finalists:
            return "finalists {" + list(among) + "}";
        case Kind::RunoffDecision:
            return "runoff between {" + list(among) + "} won by " + profile.name(chosen);
        case Kind::Level:
            return profile.name(chosen) + " reaches majority at level " + std::to_string(round);
    }
    return "";
}

WinnerResult evaluate_rule(const Profile& profile, const RuleSpec& rule, const TieBreak& tb) {
    WinnerResult out;
    out.winner = eval_core(profile, rule, tb, &out);
    return out;
}

CandidateId evaluate_winner(const Profile& profile, const RuleSpec& rule, const TieBreak& tb) {
    return eval_core(profile, rule, tb, nullptr);
}

std::optional<CandidateId> condorcet_winner(const Profile& profile) {
    const PairwiseTallies t = pairwise_tallies(profile);
    for (CandidateId x = 0; x < profile.m(); ++x) {
        bool beats_all = true;
        for (CandidateId y = 0; y < profile.m() && beats_all; ++y)
            if (x != y && t.d_at(x, y) <= 0) beats_all = false;
        if (beats_all) return x;
    }
    return std::nullopt;
}

std::vector<Rational> score_table(const Profile& profile, const RuleSpec& rule) {
    return evaluate_rule(profile, rule).scores;
}

} // namespace ballotbox
