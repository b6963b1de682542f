#pragma once

#include "ballotbox/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ballotbox {

// Candidates are dense indices 0..m-1; display names live in Profile metadata.
using CandidateId = std::int32_t;
using Count = std::int64_t;

enum class BallotKind { Ranked, Approval };

// One ballot. For Ranked profiles `seq` is a permutation of 0..m-1, most
// preferred first. For Approval profiles `seq` is the approved set, sorted
// ascending, possibly empty.
struct Ballot {
    std::vector<CandidateId> seq;

    auto operator<=>(const Ballot&) const = default;
};

struct BallotEntry {
    Ballot ballot;
    Count count = 0;
};

// An election instance: a multiplicity-compressed multiset of ballots.
// Entries are kept in canonical form (sorted by ballot, distinct, counts >= 1)
// so equality is multiset equality and every operation is anonymous by
// construction. Immutable after construction.
class Profile {
public:
    Profile(int m, BallotKind kind, std::vector<BallotEntry> entries,
            std::vector<std::string> names = {});

    int m() const { return m_; }
    BallotKind kind() const { return kind_; }
    Count n() const { return n_; }
    const std::vector<BallotEntry>& entries() const { return entries_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(CandidateId c) const { return names_.at(static_cast<size_t>(c)); }

    bool operator==(const Profile& other) const;

    // Fast path for search loops: entries must already be sorted by ballot,
    // distinct, validated, with positive counts.
    static Profile from_canonical_unchecked(int m, BallotKind kind, std::vector<BallotEntry> entries,
                                            std::vector<std::string> names);

private:
    Profile() = default;
    int m_ = 0;
    BallotKind kind_ = BallotKind::Ranked;
    Count n_ = 0;
    std::vector<BallotEntry> entries_;
    std::vector<std::string> names_;
};

// Convenience builders used all over the tests and generators.
Profile make_ranked(int m, std::vector<std::pair<std::vector<CandidateId>, Count>> ballots,
                    std::vector<std::string> names = {});
Profile make_approval(int m, std::vector<std::pair<std::vector<CandidateId>, Count>> ballots,
                      std::vector<std::string> names = {});

// Applies a candidate relabeling perm (candidate c becomes perm[c]) and
// re-canonicalizes. Names follow their candidates.
Profile relabel(const Profile& profile, const std::vector<CandidateId>& perm);

// Multiplies every entry count by factor >= 1 (homogeneity tests).
Profile scale_counts(const Profile& profile, Count factor);

// Tie-break priority: candidates earlier in `order` win ties. An empty order
// means index order, the fixed default everywhere.
struct TieBreak {
    std::vector<CandidateId> order;

    // rank[c] = position of c in the priority order; identity when empty.
    std::vector<int> ranks(int m) const;
};

} // namespace ballotbox
