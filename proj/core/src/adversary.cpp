#include "ballotbox/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ballotbox {

namespace {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

// Ceiling of a non-negative rational.
Count ceil_rational(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (q * den < num) ++q;
    return q.convert_to<Count>();
}

std::vector<Ballot> subsets_of_size(int m, int k) {
    std::vector<Ballot> out;
    std::vector<CandidateId> cur;
    auto rec = [&](auto&& self, int next, int left) -> void {
        if (left == 0) {
            out.push_back(Ballot{cur});
            return;
        }
        for (int c = next; c <= m - left; ++c) {
            cur.push_back(c);
            self(self, c + 1, left - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, k);
    return out;
}

Profile realize(const BallotDistribution& dist, Count n, int m, BallotKind kind) {
    std::vector<Rational> probs;
    probs.reserve(dist.support.size());
    for (const auto& [ballot, p] : dist.support) probs.push_back(p);
    const std::vector<Count> counts = largest_remainder(probs, n);
    std::vector<BallotEntry> entries;
    for (size_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) entries.push_back(BallotEntry{dist.support[i].first, counts[i]});
    return Profile(m, kind, std::move(entries));
}

} // namespace

void BallotDistribution::validate() const {
    Rational total(0);
    for (const auto& [ballot, p] : support) {
        if (p <= 0) throw UsageError("distribution mass must be positive");
        total += p;
    }
    if (total != 1) throw UsageError("distribution masses must sum to exactly 1");
}

std::vector<Count> largest_remainder(const std::vector<Rational>& probs, Count n) {
    std::vector<Count> counts(probs.size(), 0);
    std::vector<std::pair<Rational, size_t>> remainders;
    remainders.reserve(probs.size());
    Count assigned = 0;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0) throw UsageError("negative probability");
        const Rational exact = probs[i] * n;
        const BigInt fl = boost::multiprecision::numerator(exact) / boost::multiprecision::denominator(exact);
        counts[i] = fl.convert_to<Count>();
        assigned += counts[i];
        remainders.emplace_back(exact - Rational(fl), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    Count leftover = n - assigned;
    for (size_t j = 0; leftover > 0; ++j, --leftover) ++counts[remainders[j].second];
    return counts;
}

Profile gen_two_candidate(const Rational& epsilon, Count n, int which) {
    if (epsilon >= Rational(1, 2) || epsilon < 0) throw UsageError("epsilon must be in [0, 1/2)");
    if (n < 2) throw UsageError("need at least 2 voters");
    if (which != 0 && which != 1) throw UsageError("which must be 0 or 1");
    const Count top = ceil_rational((Rational(1, 2) + epsilon) * n);
    const CandidateId a = which, b = 1 - which;
    std::vector<BallotEntry> entries;
    entries.push_back(BallotEntry{Ballot{{a, b}}, top});
    if (n - top > 0) entries.push_back(BallotEntry{Ballot{{b, a}}, n - top});
    return Profile(2, BallotKind::Ranked, std::move(entries));
}

AdversarialFamily gen_kapproval_family(int m, int k, const Rational& epsilon, Count n) {
    if (k < 1 || k + 1 > m) throw UsageError("need k+1 <= m");
    if (epsilon <= 0 || epsilon >= 1) throw UsageError("epsilon must be in (0,1)");
    if (n < 1) throw UsageError("n must be positive");
    const int M = k + 1;
    const Rational in_mass = epsilon / Rational(binomial(M - 1, k - 1)) + (1 - epsilon) / Rational(binomial(M, k));
    const Rational out_mass = (1 - epsilon) / Rational(binomial(M, k));

    AdversarialFamily family;
    family.type = AdversarialFamily::Type::KApproval;
    family.m = m;
    family.k = k;
    family.epsilon = epsilon;
    family.n = n;
    const std::vector<Ballot> subsets = subsets_of_size(M, k);
    for (int i = 0; i < M; ++i) {
        BallotDistribution dist;
        dist.m = m;
        dist.kind = BallotKind::Approval;
        for (const Ballot& s : subsets) {
            const bool contains = std::find(s.seq.begin(), s.seq.end(), i) != s.seq.end();
            dist.support.emplace_back(s, contains ? in_mass : out_mass);
        }
        dist.validate();
        family.profiles.push_back(realize(dist, n, m, BallotKind::Approval));
        family.members.push_back(std::move(dist));
        family.intended_winners.push_back(i);
    }
    return family;
}

AdversarialFamily gen_borda_family(int m, const Rational& epsilon, Count n) {
    if (m < 4 || m % 2 != 0) throw UsageError("need even m >= 4");
    if (epsilon <= 0 || epsilon >= 1) throw UsageError("epsilon must be in (0,1)");
    if (n < 1) throw UsageError("n must be positive");

    AdversarialFamily family;
    family.type = AdversarialFamily::Type::Borda;
    family.m = m;
    family.k = 0;
    family.epsilon = epsilon;
    family.n = n;

    // Mass of a single ranking, exactly normalized. The raw weights 1+eps /
    // 1-eps over the two halves already sum to m! because each half holds
    // exactly m!/2 rankings; the division keeps that explicit.
    const Rational norm = (Rational(1) + epsilon) / 2 + (Rational(1) - epsilon) / 2; // == 1

    for (int i = 0; i < m; ++i) {
        // Realization support: candidate i at position p, the others in one of
        // the m-1 cyclic rotations of index order. Every other candidate sits
        // in every remaining slot equally often, so all positional totals and
        // all D(c_i, .) match the full-symmetry distribution exactly.
        std::vector<CandidateId> others;
        for (int c = 0; c < m; ++c)
            if (c != i) others.push_back(c);
        BallotDistribution realization;
        realization.m = m;
        realization.kind = BallotKind::Ranked;
        std::map<Ballot, Rational> mass;
        for (int p = 0; p < m; ++p) {
            const Rational class_mass =
                ((p < m / 2 ? Rational(1) + epsilon : Rational(1) - epsilon) / m) / norm;
            const Rational per_rep = class_mass / static_cast<int>(others.size());
            for (size_t rot = 0; rot < others.size(); ++rot) {
                Ballot b;
                b.seq.reserve(static_cast<size_t>(m));
                for (int pos = 0, oi = 0; pos < m; ++pos) {
                    if (pos == p) {
                        b.seq.push_back(i);
                    } else {
                        b.seq.push_back(others[(rot + static_cast<size_t>(oi)) % others.size()]);
                        ++oi;
                    }
                }
                mass[b] += per_rep;
            }
        }
        for (auto& [ballot, p] : mass) realization.support.emplace_back(ballot, p);
        realization.validate();
        family.profiles.push_back(realize(realization, n, m, BallotKind::Ranked));
        family.members.push_back(std::move(realization));
        family.intended_winners.push_back(i);
    }
    return family;
}

AdversarialFamily gen_bucklin_family(int m, const Rational& epsilon, Count n) {
    if (m < 4 || m % 4 != 0) throw UsageError("need m divisible by 4");
    if (epsilon <= 0 || epsilon >= 1) throw UsageError("epsilon must be in (0,1)");
    if (n < 1) throw UsageError("n must be positive");
    const int q = m / 4;
    const Rational in_mass = (1 - epsilon) / Rational(binomial(m - 1, q - 1)) + epsilon / Rational(binomial(m, q));
    const Rational out_mass = epsilon / Rational(binomial(m, q));

    AdversarialFamily family;
    family.type = AdversarialFamily::Type::Bucklin;
    family.m = m;
    family.k = q;
    family.epsilon = epsilon;
    family.n = n;
    const std::vector<Ballot> subsets = subsets_of_size(m, q);
    for (int i = 0; i < m; ++i) {
        BallotDistribution dist;
        dist.m = m;
        dist.kind = BallotKind::Approval;
        for (const Ballot& s : subsets) {
            const bool contains = std::find(s.seq.begin(), s.seq.end(), i) != s.seq.end();
            dist.support.emplace_back(s, contains ? in_mass : out_mass);
        }
        dist.validate();
        // prefixes completed to full rankings for the realized election
        const Profile prefixes = realize(dist, n, m, BallotKind::Approval);
        family.profiles.push_back(ranked_completion(prefixes));
        family.members.push_back(std::move(dist));
        family.intended_winners.push_back(i);
    }
    return family;
}

Ballot complete_to_ranking(const Ballot& subset, int m) {
    Ballot out;
    out.seq.reserve(static_cast<size_t>(m));
    std::vector<char> used(static_cast<size_t>(m), 0);
    for (CandidateId c : subset.seq) {
        out.seq.push_back(c);
        used[static_cast<size_t>(c)] = 1;
    }
    for (CandidateId c = 0; c < m; ++c)
        if (!used[static_cast<size_t>(c)]) out.seq.push_back(c);
    return out;
}

Profile ranked_completion(const Profile& approval_profile) {
    if (approval_profile.kind() != BallotKind::Approval)
        throw UsageError("ranked_completion takes an approval profile");
    std::vector<BallotEntry> entries;
    entries.reserve(approval_profile.entries().size());
    for (const auto& e : approval_profile.entries())
        entries.push_back(BallotEntry{complete_to_ranking(e.ballot, approval_profile.m()), e.count});
    return Profile(approval_profile.m(), BallotKind::Ranked, std::move(entries), approval_profile.names());
}

double kl_divergence(const BallotDistribution& p, const BallotDistribution& q) {
    if (p.m != q.m || p.kind != q.kind) throw UsageError("KL divergence needs a common alphabet");
    std::map<Ballot, Rational> qmap;
    for (const auto& [ballot, mass] : q.support) qmap[ballot] = mass;
    double total = 0.0;
    for (const auto& [ballot, mass] : p.support) {
        if (mass == 0) continue;
        const auto it = qmap.find(ballot);
        if (it == qmap.end() || it->second == 0)
            throw UsageError("KL divergence is infinite: support(p) not within support(q)");
        total += to_double(mass) * std::log(to_double(mass / it->second));
    }
    return total;
}

double generalized_js(const std::vector<BallotDistribution>& members) {
    if (members.size() < 2) throw UsageError("generalized JS needs at least 2 distributions");
    std::map<Ballot, Rational> mixture;
    for (const auto& member : members) {
        if (member.m != members.front().m || member.kind != members.front().kind)
            throw UsageError("generalized JS needs a common alphabet");
        for (const auto& [ballot, mass] : member.support) mixture[ballot] += mass;
    }
    const auto count = static_cast<int>(members.size());
    for (auto& [ballot, mass] : mixture) mass /= count;
    double total = 0.0;
    for (const auto& member : members) {
        for (const auto& [ballot, mass] : member.support) {
            if (mass == 0) continue;
            total += to_double(mass) * std::log(to_double(mass / mixture[ballot]));
        }
    }
    return total / count;
}

DivergenceReport family_divergence_report(const AdversarialFamily& family) {
    DivergenceReport report;
    if (family.type == AdversarialFamily::Type::Borda) {
        // Mixture over the full ranking alphabet is uniform (each ranking has
        // exactly m/2 of the members boosting it), so per-member KL collapses
        // to the two-class form.
        const double eps = to_double(family.epsilon);
        const double kl = 0.5 * (1 + eps) * std::log(1 + eps) + 0.5 * (1 - eps) * std::log(1 - eps);
        report.kl_to_mixture.assign(family.members.size(), kl);
        report.js = kl;
        return report;
    }
    std::map<Ballot, Rational> mixture;
    for (const auto& member : family.members)
        for (const auto& [ballot, mass] : member.support) mixture[ballot] += mass;
    const auto count = static_cast<int>(family.members.size());
    for (auto& [ballot, mass] : mixture) mass /= count;
    double sum = 0.0;
    for (const auto& member : family.members) {
        double kl = 0.0;
        for (const auto& [ballot, mass] : member.support) {
            if (mass == 0) continue;
            kl += to_double(mass) * std::log(to_double(mass / mixture[ballot]));
        }
        report.kl_to_mixture.push_back(kl);
        sum += kl;
    }
    report.js = sum / count;
    return report;
}

} // namespace ballotbox
