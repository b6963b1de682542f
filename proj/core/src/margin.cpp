#include "ballotbox/margin.hpp"

#include "ballotbox/tallies.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ballotbox {

namespace {

std::vector<Ballot> ranked_alphabet(int m) {
    if (m > 8) throw UsageError("ranked replacement alphabet limited to m <= 8");
    std::vector<CandidateId> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Ballot> out;
    do {
        out.push_back(Ballot{perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Ballot> approval_alphabet(int m) {
    if (m > 16) throw UsageError("approval replacement alphabet limited to m <= 16");
    std::vector<Ballot> out;
    out.reserve(size_t{1} << m);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        Ballot b;
        for (int c = 0; c < m; ++c)
            if (mask & (1u << c)) b.seq.push_back(c);
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct MovSearch {
    const Profile& profile;
    const RuleSpec& rule;
    const MovOptions& options;
    CandidateId original_winner;
    std::vector<Ballot> alphabet;
    std::vector<int> remove_counts;               // per profile entry
    std::vector<std::pair<int, Count>> additions; // (alphabet index, count)
    long long evaluations = 0;
    std::optional<MovWitness> hit;
    CandidateId hit_winner = -1;

    bool removed_type(const Ballot& b) const {
        for (size_t i = 0; i < remove_counts.size(); ++i)
            if (remove_counts[i] > 0 && profile.entries()[i].ballot == b) return true;
        return false;
    }

    Profile build_modified() const {
        const auto& entries = profile.entries();
        std::vector<BallotEntry> merged;
        merged.reserve(entries.size() + additions.size());
        size_t ei = 0, ai = 0;
        auto entry_count = [&](size_t i) { return entries[i].count - remove_counts[i]; };
        while (ei < entries.size() || ai < additions.size()) {
            if (ai == additions.size() ||
                (ei < entries.size() && entries[ei].ballot < alphabet[static_cast<size_t>(additions[ai].first)])) {
                if (entry_count(ei) > 0) merged.push_back(BallotEntry{entries[ei].ballot, entry_count(ei)});
                ++ei;
            } else if (ei == entries.size() ||
                       alphabet[static_cast<size_t>(additions[ai].first)] < entries[ei].ballot) {
                merged.push_back(
                    BallotEntry{alphabet[static_cast<size_t>(additions[ai].first)], additions[ai].second});
                ++ai;
            } else {
                const Count c = entry_count(ei) + additions[ai].second;
                if (c > 0) merged.push_back(BallotEntry{entries[ei].ballot, c});
                ++ei;
                ++ai;
            }
        }
        return Profile::from_canonical_unchecked(profile.m(), profile.kind(), std::move(merged),
                                                 profile.names());
    }

    bool try_candidate() {
        if (++evaluations > options.node_budget)
            throw BudgetError("brute_force_mov exceeded its node budget");
        const Profile modified = build_modified();
        const CandidateId w = evaluate_winner(modified, rule, options.tie_break);
        if (w == original_winner) return false;
        MovWitness witness;
        for (size_t i = 0; i < remove_counts.size(); ++i)
            if (remove_counts[i] > 0)
                witness.removed.push_back(BallotEntry{profile.entries()[i].ballot, remove_counts[i]});
        for (const auto& [idx, count] : additions)
            witness.added.push_back(BallotEntry{alphabet[static_cast<size_t>(idx)], count});
        hit = std::move(witness);
        hit_winner = w;
        return true;
    }

    // Fill `additions` with a size-`left` multiset over alphabet[from..],
    // skipping ballot types present in the removal set.
    bool enumerate_additions(size_t from, Count left) {
        if (left == 0) return try_candidate();
        for (size_t i = from; i < alphabet.size(); ++i) {
            if (removed_type(alphabet[i])) continue;
            for (Count take = left; take >= 1; --take) {
                additions.emplace_back(static_cast<int>(i), take);
                if (enumerate_additions(i + 1, left - take)) return true;
                additions.pop_back();
            }
        }
        return false;
    }

    bool enumerate_removals(size_t entry, Count left) {
        if (left == 0) return enumerate_additions(0, total_removed());
        if (entry == profile.entries().size()) return false;
        const Count avail = std::min<Count>(left, profile.entries()[entry].count);
        for (Count take = 0; take <= avail; ++take) {
            remove_counts[entry] = static_cast<int>(take);
            if (enumerate_removals(entry + 1, left - take)) return true;
        }
        remove_counts[entry] = 0;
        return false;
    }

    Count total_removed() const {
        Count t = 0;
        for (int r : remove_counts) t += r;
        return t;
    }
};

Rational rational_min(const std::vector<Rational>& vals, CandidateId skip) {
    Rational best;
    bool first = true;
    for (CandidateId c = 0; c < static_cast<CandidateId>(vals.size()); ++c) {
        if (c == skip) continue;
        if (first || vals[static_cast<size_t>(c)] < best) {
            best = vals[static_cast<size_t>(c)];
            first = false;
        }
    }
    return best;
}

} // namespace

MovResult brute_force_mov(const Profile& profile, const RuleSpec& rule, int cap,
                          const MovOptions& options) {
    if (cap < 0) throw UsageError("cap must be non-negative");
    MovSearch search{profile, rule, options,
                     evaluate_winner(profile, rule, options.tie_break),
                     profile.kind() == BallotKind::Ranked ? ranked_alphabet(profile.m())
                                                          : approval_alphabet(profile.m()),
                     std::vector<int>(profile.entries().size(), 0),
                     {},
                     0,
                     std::nullopt,
                     -1};
    MovResult result;
    result.cap = cap;
    result.original_winner = search.original_winner;
    const Count max_k = std::min<Count>(cap, profile.n());
    for (Count k = 1; k <= max_k; ++k) {
        if (search.enumerate_removals(0, k)) {
            result.mov = static_cast<int>(k);
            result.witness = search.hit;
            result.new_winner = search.hit_winner;
            break;
        }
    }
    result.evaluations = search.evaluations;
    return result;
}

Profile apply_witness(const Profile& profile, const MovWitness& witness) {
    std::vector<BallotEntry> entries = profile.entries();
    for (const auto& rem : witness.removed) {
        bool found = false;
        for (auto& e : entries) {
            if (e.ballot == rem.ballot) {
                if (e.count < rem.count) throw UsageError("witness removes more ballots than present");
                e.count -= rem.count;
                found = true;
                break;
            }
        }
        if (!found) throw UsageError("witness removes a ballot type not in the profile");
    }
    std::erase_if(entries, [](const BallotEntry& e) { return e.count == 0; });
    for (const auto& add : witness.added) entries.push_back(add);
    return Profile(profile.m(), profile.kind(), std::move(entries), profile.names());
}

std::string GapCertificate::describe(const Profile& profile) const {
    std::ostringstream os;
    os << rule.name() << " certificate (";
    switch (kind) {
        case GapKind::ScoreGap: os << "score-gap"; break;
        case GapKind::MaximinGap: os << "maximin-gap"; break;
        case GapKind::RelativeMargin: os << "relative-margin"; break;
        case GapKind::BucklinLevels: os << "bucklin-levels"; break;
        case GapKind::RunoffConditions: os << "runoff-conditions"; break;
        case GapKind::StvChainBound: os << "stv-chain-bound"; break;
    }
    os << ")";
    if (degenerate) {
        os << ": degenerate (single candidate)";
        return os.str();
    }
    os << ": value " << rational_to_string(value) << ", winner " << profile.name(winner);
    if (kind == GapKind::BucklinLevels) {
        os << ", levels";
        for (size_t c = 0; c < per_candidate.size(); ++c)
            os << " " << profile.name(static_cast<CandidateId>(c)) << "=" << rational_to_string(per_candidate[c]);
    }
    if (kind == GapKind::RunoffConditions) {
        for (size_t i = 0; i < slacks.size(); ++i) {
            os << ", cond" << (i + 1) << " ";
            if (slacks[i]) os << "slack " << rational_to_string(*slacks[i]);
            else os << "vacuous";
        }
    }
    os << (holds ? " [holds]" : " [fails]");
    return os.str();
}

GapCertificate approval_gap(const Profile& profile, const RuleSpec& rule) {
    switch (rule.kind) {
        case RuleSpec::Kind::Approval:
        case RuleSpec::Kind::Scoring:
        case RuleSpec::Kind::KApproval:
        case RuleSpec::Kind::Plurality:
        case RuleSpec::Kind::Borda:
            break;
        default:
            throw UsageError("approval_gap applies to approval/scoring-family rules only");
    }
    GapCertificate cert;
    cert.rule = rule;
    cert.kind = GapKind::ScoreGap;
    const WinnerResult res = evaluate_rule(profile, rule);
    cert.winner = res.winner;
    if (profile.m() == 1) {
        cert.degenerate = true;
        return cert;
    }
    cert.per_candidate.resize(res.scores.size());
    for (CandidateId c = 0; c < profile.m(); ++c)
        cert.per_candidate[static_cast<size_t>(c)] =
            res.scores[static_cast<size_t>(res.winner)] - res.scores[static_cast<size_t>(c)];
    cert.value = rational_min(cert.per_candidate, res.winner);
    return cert;
}

GapCertificate maximin_gap(const Profile& profile) {
    GapCertificate cert;
    cert.rule = RuleSpec::maximin();
    cert.kind = GapKind::MaximinGap;
    const WinnerResult res = evaluate_rule(profile, cert.rule);
    cert.winner = res.winner;
    if (profile.m() == 1) {
        cert.degenerate = true;
        return cert;
    }
    cert.per_candidate.resize(res.scores.size());
    for (CandidateId c = 0; c < profile.m(); ++c)
        cert.per_candidate[static_cast<size_t>(c)] =
            res.scores[static_cast<size_t>(res.winner)] - res.scores[static_cast<size_t>(c)];
    cert.value = rational_min(cert.per_candidate, res.winner);
    return cert;
}

Rational s_prime(const PairwiseTallies& tallies, CandidateId x, Count t, const Rational& alpha) {
    Count below = 0, at = 0;
    for (CandidateId y = 0; y < tallies.m; ++y) {
        if (y == x) continue;
        const Count d = tallies.d_at(y, x);
        if (d < 2 * t) ++below;
        else if (d == 2 * t) ++at;
    }
    return Rational(below) + alpha * at;
}

namespace {

Count relative_margin_tallies(const PairwiseTallies& t, Count n, CandidateId x, CandidateId y,
                              const Rational& alpha) {
    // predicate is monotone in tt: s'_{-tt}(x) falls, s'_tt(y) grows
    auto pred = [&](Count tt) { return s_prime(t, x, -tt, alpha) <= s_prime(t, y, tt, alpha); };
    Count lo = -n, hi = n;
    if (pred(lo)) return lo;
    while (lo + 1 < hi) {
        const Count mid = lo + (hi - lo) / 2;
        if (pred(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

} // namespace

Count relative_margin(const Profile& profile, CandidateId x, CandidateId y, const Rational& alpha) {
    if (x == y) throw UsageError("relative_margin needs two distinct candidates");
    const PairwiseTallies t = pairwise_tallies(profile);
    return relative_margin_tallies(t, profile.n(), x, y, alpha);
}

GapCertificate gamma(const Profile& profile, const Rational& alpha) {
    GapCertificate cert;
    cert.rule = RuleSpec::copeland(alpha);
    cert.kind = GapKind::RelativeMargin;
    cert.winner = evaluate_winner(profile, cert.rule);
    if (profile.m() == 1) {
        cert.degenerate = true;
        return cert;
    }
    const PairwiseTallies t = pairwise_tallies(profile);
    cert.per_candidate.assign(static_cast<size_t>(profile.m()), Rational(0));
    bool first = true;
    for (CandidateId x = 0; x < profile.m(); ++x) {
        if (x == cert.winner) continue;
        const Count rm = relative_margin_tallies(t, profile.n(), cert.winner, x, alpha);
        cert.per_candidate[static_cast<size_t>(x)] = rm;
        if (first || Rational(rm) < cert.value) {
            cert.value = rm;
            first = false;
        }
    }
    return cert;
}

GapCertificate bucklin_levels(const Profile& profile, const Rational& epsilon) {
    if (epsilon <= 0 || epsilon > 1) throw UsageError("epsilon must be in (0,1]");
    GapCertificate cert;
    cert.rule = RuleSpec::bucklin();
    cert.kind = GapKind::BucklinLevels;
    const Count n = profile.n();
    cert.winner = evaluate_winner(profile, cert.rule);
    if (profile.m() == 1) {
        cert.degenerate = true;
        return cert;
    }
    const Rational hi = Rational(n, 2) + epsilon * n / 3;
    const Rational lo = Rational(n, 2) - epsilon * n / 3;
    const int m = profile.m();
    cert.per_candidate.assign(static_cast<size_t>(m), Rational(m + 1));
    std::vector<Count> cum(static_cast<size_t>(m), 0);
    std::vector<char> done(static_cast<size_t>(m), 0);
    for (int l = 1; l <= m; ++l) {
        for (const auto& e : profile.entries())
            cum[static_cast<size_t>(e.ballot.seq[static_cast<size_t>(l - 1)])] += e.count;
        for (CandidateId c = 0; c < m; ++c) {
            if (done[static_cast<size_t>(c)]) continue;
            const Rational threshold = (c == cert.winner) ? hi : lo;
            if (Rational(cum[static_cast<size_t>(c)]) >= threshold) {
                cert.per_candidate[static_cast<size_t>(c)] = l;
                done[static_cast<size_t>(c)] = 1;
            }
        }
    }
    const Rational b_w = cert.per_candidate[static_cast<size_t>(cert.winner)];
    Rational min_diff;
    bool first = true;
    for (CandidateId c = 0; c < m; ++c) {
        if (c == cert.winner) continue;
        const Rational diff = cert.per_candidate[static_cast<size_t>(c)] - b_w;
        if (first || diff < min_diff) {
            min_diff = diff;
            first = false;
        }
    }
    cert.value = min_diff;
    cert.holds = min_diff >= 1;
    return cert;
}

GapCertificate runoff_conditions(const Profile& profile, const Rational& epsilon) {
    if (epsilon <= 0 || epsilon > 1) throw UsageError("epsilon must be in (0,1]");
    GapCertificate cert;
    cert.rule = RuleSpec::runoff();
    cert.kind = GapKind::RunoffConditions;
    const WinnerResult res = evaluate_rule(profile, cert.rule);
    cert.winner = res.winner;
    if (profile.m() == 1) {
        cert.degenerate = true;
        return cert;
    }
    CandidateId finalist_a = -1, finalist_b = -1;
    for (const auto& ev : res.trace)
        if (ev.kind == TraceEvent::Kind::Finalists) {
            finalist_a = ev.among[0];
            finalist_b = ev.among[1];
        }
    const CandidateId w = res.winner;
    const CandidateId r = (w == finalist_a) ? finalist_b : finalist_a;
    const std::vector<Count> s = top_k_counts(profile, 1);
    const PairwiseTallies t = pairwise_tallies(profile);
    const Count n_votes = profile.n();
    const Rational en = epsilon * n_votes;

    cert.slacks.assign(3, std::nullopt);
    cert.slacks[0] = Rational(t.d_at(w, r)) - 2 * en;

    for (CandidateId x = 0; x < profile.m(); ++x) {
        if (x == w || x == r) continue;
        const Rational slack =
            Rational(2 * s[static_cast<size_t>(w)]) - s[static_cast<size_t>(x)] - s[static_cast<size_t>(r)] - en;
        if (!cert.slacks[1] || slack < *cert.slacks[1]) cert.slacks[1] = slack;
    }
    for (CandidateId x = 0; x < profile.m(); ++x) {
        if (x == w || x == r) continue;
        if (Rational(s[static_cast<size_t>(x)]) > Rational(s[static_cast<size_t>(r)]) - en / 2) {
            const Rational slack = Rational(t.d_at(w, x)) - en / 2;
            if (!cert.slacks[2] || slack < *cert.slacks[2]) cert.slacks[2] = slack;
        }
    }

    bool first = true;
    cert.holds = true;
    for (const auto& slack : cert.slacks) {
        if (!slack) continue;
        if (*slack <= 0) cert.holds = false;
        if (first || *slack < cert.value) {
            cert.value = *slack;
            first = false;
        }
    }
    return cert;
}

Count stv_chain_bound(const Profile& profile, const std::vector<CandidateId>& order) {
    const int m = profile.m();
    if (static_cast<int>(order.size()) != m) throw UsageError("order must list all candidates");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (CandidateId c : order) {
        if (c < 0 || c >= m || seen[static_cast<size_t>(c)]) throw UsageError("order is not a permutation");
        seen[static_cast<size_t>(c)] = 1;
    }
    const CandidateId w = evaluate_winner(profile, RuleSpec::stv());
    if (order.back() == w) throw UsageError("chain order must not end at the winner");

    std::vector<CandidateId> alive(order.begin(), order.end());
    std::sort(alive.begin(), alive.end());
    Count total = 0;
    for (int i = 0; i < m; ++i) {
        const std::vector<Count> s = restricted_plurality(profile, alive);
        Count smin = s[static_cast<size_t>(alive.front())];
        for (CandidateId c : alive) smin = std::min(smin, s[static_cast<size_t>(c)]);
        total += s[static_cast<size_t>(order[static_cast<size_t>(i)])] - smin;
        alive.erase(std::find(alive.begin(), alive.end(), order[static_cast<size_t>(i)]));
        if (alive.empty()) break;
    }
    return total;
}

EpsilonCertificate certificate_at(const Profile& profile, const RuleSpec& rule, const Rational& epsilon) {
    if (epsilon <= 0 || epsilon > 1) throw UsageError("epsilon must be in (0,1]");
    const Rational en = epsilon * profile.n();
    EpsilonCertificate out;
    switch (rule.kind) {
        case RuleSpec::Kind::Approval:
            out.cert = approval_gap(profile, rule);
            out.threshold = en;
            break;
        case RuleSpec::Kind::Plurality:
        case RuleSpec::Kind::KApproval:
        case RuleSpec::Kind::Scoring:
        case RuleSpec::Kind::Borda:
            out.cert = approval_gap(profile, rule);
            out.threshold = en / 2;
            break;
        case RuleSpec::Kind::Maximin:
            out.cert = maximin_gap(profile);
            out.threshold = en;
            break;
        case RuleSpec::Kind::Copeland: {
            out.cert = gamma(profile, rule.alpha);
            int lg = 0;
            while ((1 << lg) < profile.m()) ++lg;
            out.threshold = en / (2 * (lg + 1));
            break;
        }
        case RuleSpec::Kind::Bucklin:
            out.cert = bucklin_levels(profile, epsilon);
            out.threshold = 1;
            break;
        case RuleSpec::Kind::PluralityRunoff:
            out.cert = runoff_conditions(profile, epsilon);
            out.threshold = 0;
            break;
        case RuleSpec::Kind::Stv: {
            out.cert.rule = rule;
            out.cert.kind = GapKind::StvChainBound;
            out.cert.winner = evaluate_winner(profile, rule);
            out.cert.value = min_stv_chain_bound(profile);
            out.threshold = en;
            break;
        }
    }
    switch (rule.kind) {
        case RuleSpec::Kind::Bucklin:
            out.holds = out.cert.holds && !out.cert.degenerate;
            break;
        case RuleSpec::Kind::PluralityRunoff:
            out.holds = out.cert.holds && !out.cert.degenerate;
            break;
        default:
            out.holds = !out.cert.degenerate && out.cert.value >= out.threshold;
            break;
    }
    out.cert.holds = out.holds;
    return out;
}

Count min_stv_chain_bound(const Profile& profile) {
    const int m = profile.m();
    if (m > 8) throw UsageError("min_stv_chain_bound limited to m <= 8");
    const CandidateId w = evaluate_winner(profile, RuleSpec::stv());
    std::vector<CandidateId> order(static_cast<size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::optional<Count> best;
    do {
        if (order.back() == w) continue;
        const Count bound = stv_chain_bound(profile, order);
        if (!best || bound < *best) best = bound;
    } while (std::next_permutation(order.begin(), order.end()));
    if (!best) throw UsageError("no valid chain order (single candidate)");
    return *best;
}

} // namespace ballotbox
