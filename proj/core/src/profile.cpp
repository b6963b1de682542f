#include "ballotbox/profile.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ballotbox {

namespace {

void validate_ballot(const Ballot& b, int m, BallotKind kind) {
    if (kind == BallotKind::Ranked) {
        if (static_cast<int>(b.seq.size()) != m)
            throw DataError("ranked ballot must rank all " + std::to_string(m) + " candidates");
        std::vector<char> seen(static_cast<size_t>(m), 0);
        for (CandidateId c : b.seq) {
            if (c < 0 || c >= m) throw DataError("candidate id out of range: " + std::to_string(c));
            if (seen[static_cast<size_t>(c)]) throw DataError("duplicate candidate in ranking: " + std::to_string(c));
            seen[static_cast<size_t>(c)] = 1;
        }
    } else {
        CandidateId prev = -1;
        for (CandidateId c : b.seq) {
            if (c < 0 || c >= m) throw DataError("candidate id out of range: " + std::to_string(c));
            if (c <= prev) throw DataError("approval set must be sorted and duplicate-free");
            prev = c;
        }
    }
}

} // namespace

Profile::Profile(int m, BallotKind kind, std::vector<BallotEntry> entries,
                 std::vector<std::string> names)
    : m_(m), kind_(kind) {
    if (m < 1) throw DataError("candidate count must be at least 1");
    if (names.empty()) {
        names_.reserve(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) names_.push_back("c" + std::to_string(i));
    } else {
        if (static_cast<int>(names.size()) != m)
            throw DataError("expected " + std::to_string(m) + " candidate names");
        names_ = std::move(names);
        std::set<std::string> uniq(names_.begin(), names_.end());
        if (static_cast<int>(uniq.size()) != m) throw DataError("candidate names must be unique");
    }

    // Canonical multiset form: merge duplicates, sort by ballot.
    std::map<Ballot, Count> merged;
    for (auto& e : entries) {
        if (e.count < 1) throw DataError("ballot count must be >= 1");
        validate_ballot(e.ballot, m, kind);
        merged[e.ballot] += e.count;
    }
    if (merged.empty()) throw DataError("no ballots");
    entries_.reserve(merged.size());
    for (auto& [ballot, count] : merged) {
        entries_.push_back(BallotEntry{ballot, count});
        n_ += count;
    }
}

Profile Profile::from_canonical_unchecked(int m, BallotKind kind, std::vector<BallotEntry> entries,
                                          std::vector<std::string> names) {
    Profile p;
    p.m_ = m;
    p.kind_ = kind;
    p.entries_ = std::move(entries);
    p.names_ = std::move(names);
    for (const auto& e : p.entries_) p.n_ += e.count;
    return p;
}

bool Profile::operator==(const Profile& other) const {
    if (m_ != other.m_ || kind_ != other.kind_ || n_ != other.n_) return false;
    if (names_ != other.names_) return false;
    if (entries_.size() != other.entries_.size()) return false;
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].ballot != other.entries_[i].ballot) return false;
        if (entries_[i].count != other.entries_[i].count) return false;
    }
    return true;
}

Profile make_ranked(int m, std::vector<std::pair<std::vector<CandidateId>, Count>> ballots,
                    std::vector<std::string> names) {
    std::vector<BallotEntry> entries;
    entries.reserve(ballots.size());
    for (auto& [seq, count] : ballots) entries.push_back(BallotEntry{Ballot{std::move(seq)}, count});
    return Profile(m, BallotKind::Ranked, std::move(entries), std::move(names));
}

Profile make_approval(int m, std::vector<std::pair<std::vector<CandidateId>, Count>> ballots,
                      std::vector<std::string> names) {
    std::vector<BallotEntry> entries;
    entries.reserve(ballots.size());
    for (auto& [set, count] : ballots) {
        std::vector<CandidateId> sorted = set;
        std::sort(sorted.begin(), sorted.end());
        entries.push_back(BallotEntry{Ballot{std::move(sorted)}, count});
    }
    return Profile(m, BallotKind::Approval, std::move(entries), std::move(names));
}

Profile relabel(const Profile& profile, const std::vector<CandidateId>& perm) {
    const int m = profile.m();
    if (static_cast<int>(perm.size()) != m) throw UsageError("relabel: permutation size mismatch");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (CandidateId c : perm) {
        if (c < 0 || c >= m || seen[static_cast<size_t>(c)]) throw UsageError("relabel: not a permutation");
        seen[static_cast<size_t>(c)] = 1;
    }
    std::vector<BallotEntry> entries;
    entries.reserve(profile.entries().size());
    for (const auto& e : profile.entries()) {
        Ballot b;
        b.seq.reserve(e.ballot.seq.size());
        for (CandidateId c : e.ballot.seq) b.seq.push_back(perm[static_cast<size_t>(c)]);
        if (profile.kind() == BallotKind::Approval) std::sort(b.seq.begin(), b.seq.end());
        entries.push_back(BallotEntry{std::move(b), e.count});
    }
    std::vector<std::string> names(static_cast<size_t>(m));
    for (int c = 0; c < m; ++c) names[static_cast<size_t>(perm[static_cast<size_t>(c)])] = profile.names()[static_cast<size_t>(c)];
    return Profile(m, profile.kind(), std::move(entries), std::move(names));
}

Profile scale_counts(const Profile& profile, Count factor) {
    if (factor < 1) throw UsageError("scale factor must be >= 1");
    std::vector<BallotEntry> entries = profile.entries();
    for (auto& e : entries) e.count *= factor;
    return Profile(profile.m(), profile.kind(), std::move(entries), profile.names());
}

std::vector<int> TieBreak::ranks(int m) const {
    std::vector<int> r(static_cast<size_t>(m));
    if (order.empty()) {
        for (int i = 0; i < m; ++i) r[static_cast<size_t>(i)] = i;
        return r;
    }
    if (static_cast<int>(order.size()) != m) throw UsageError("tie-break order size mismatch");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        CandidateId c = order[static_cast<size_t>(i)];
        if (c < 0 || c >= m || seen[static_cast<size_t>(c)]) throw UsageError("tie-break order not a permutation");
        seen[static_cast<size_t>(c)] = 1;
        r[static_cast<size_t>(c)] = i;
    }
    return r;
}

} // namespace ballotbox
