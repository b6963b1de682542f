#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ballotbox/adversary.hpp"
#include "ballotbox/rules.hpp"
#include "ballotbox/tallies.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace ballotbox;

namespace {

BallotDistribution two_point(const Rational& p0, const Rational& p1) {
    BallotDistribution d;
    d.m = 2;
    d.kind = BallotKind::Approval;
    if (p0 > 0) d.support.emplace_back(Ballot{{0}}, p0);
    if (p1 > 0) d.support.emplace_back(Ballot{{1}}, p1);
    return d;
}

} // namespace

TEST_CASE("largest remainder apportionment") {
    const std::vector<Rational> probs = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    CHECK(largest_remainder(probs, 10) == std::vector<Count>{4, 3, 3});
    const std::vector<Rational> skew = {Rational(5, 8), Rational(3, 8)};
    CHECK(largest_remainder(skew, 8) == std::vector<Count>{5, 3});
    // sums to n, deviates by less than one vote per point
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> ps;
        Rational total(0);
        for (int i = 0; i < 5; ++i) {
            const Rational p(1 + static_cast<long long>(rng.below(9)), 40);
            ps.push_back(p);
            total += p;
        }
        ps.push_back(1 - total);
        const Count n = 1 + static_cast<Count>(rng.below(500));
        const auto counts = largest_remainder(ps, n);
        Count sum = 0;
        for (size_t i = 0; i < counts.size(); ++i) {
            sum += counts[i];
            const Rational deviation = Rational(counts[i]) - ps[i] * n;
            CHECK(deviation > -1);
            CHECK(deviation < 1);
        }
        CHECK(sum == n);
    }
}

TEST_CASE("two-candidate lower-bound instance") {
    const Profile profile = gen_two_candidate(Rational(1, 10), 10, 0);
    CHECK(profile.entries()[0].count == 6); // ceil(0.6 * 10)
    CHECK(profile.entries()[0].ballot.seq == std::vector<CandidateId>{0, 1});
    CHECK(profile.entries()[1].count == 4);
    CHECK(evaluate_winner(profile, RuleSpec::plurality()) == 0);

    const Profile mirror = gen_two_candidate(Rational(1, 10), 10, 1);
    CHECK(evaluate_winner(mirror, RuleSpec::plurality()) == 1);
    CHECK(mirror.entries()[0].count == 4); // (a>b) ballots, now the minority
    CHECK_THROWS_AS(gen_two_candidate(Rational(1, 2), 10, 0), UsageError);
}

TEST_CASE("k-approval family") {
    const int m = 8, k = 3;
    const Rational eps(1, 10);
    const Count n = 2000;
    const AdversarialFamily family = gen_kapproval_family(m, k, eps, n);
    const int M = k + 1;
    REQUIRE(static_cast<int>(family.members.size()) == M);

    SUBCASE("member masses sum to exactly 1") {
        for (const auto& member : family.members) {
            Rational total(0);
            for (const auto& [ballot, p] : member.support) total += p;
            CHECK(total == 1);
        }
    }
    SUBCASE("realized winner is c_i under approval, and under k-approval on the rank completion") {
        for (int i = 0; i < M; ++i) {
            CHECK(family.profiles[static_cast<size_t>(i)].n() == n);
            CHECK(evaluate_winner(family.profiles[static_cast<size_t>(i)], RuleSpec::approval()) == i);
            const Profile ranked = ranked_completion(family.profiles[static_cast<size_t>(i)]);
            CHECK(evaluate_winner(ranked, RuleSpec::k_approval(k)) == i);
        }
    }
    SUBCASE("score gap is eps*n*(M-k)/(M-1) within rounding slack") {
        // each support point rounds by < 1 vote and a candidate sits in at
        // most C(M,k) support points, so the gap moves by < 2*C(M,k)
        const Rational expected = eps * n * (M - k) / (M - 1);
        for (int i = 0; i < M; ++i) {
            const auto scores = approval_scores(family.profiles[static_cast<size_t>(i)]);
            for (int j = 0; j < M; ++j) {
                if (j == i) continue;
                const Rational gap = Rational(scores[static_cast<size_t>(i)] - scores[static_cast<size_t>(j)]);
                CHECK(gap - expected > -8);
                CHECK(gap - expected < 8);
            }
        }
    }
    CHECK_THROWS_AS(gen_kapproval_family(3, 3, eps, n), UsageError);
    CHECK_THROWS_AS(gen_kapproval_family(8, 3, Rational(1), n), UsageError);
}

TEST_CASE("borda family") {
    const int m = 4;
    const Rational eps(1, 5);
    const Count n = 1200;
    const AdversarialFamily family = gen_borda_family(m, eps, n);
    REQUIRE(family.members.size() == 4);

    SUBCASE("borda winner of each realized member is its designated candidate") {
        for (int i = 0; i < m; ++i)
            CHECK(evaluate_winner(family.profiles[static_cast<size_t>(i)], RuleSpec::borda()) == i);
    }
    SUBCASE("scores match the construction exactly, and the (m,..,1)-scale asymptotic form loosely") {
        // paper-scale score of c_i: exact value n((m+1)/2 + eps*m/4); the
        // commonly quoted (mn/2)(1+eps/2) differs from it by exactly n/2
        const Rational slack = Rational(static_cast<Count>(family.members[0].support.size()) * m);
        for (int i = 0; i < m; ++i) {
            const auto canon = positional_scores(family.profiles[static_cast<size_t>(i)], ScoreVector::borda(m));
            const Rational paper_scale = canon[static_cast<size_t>(i)] * (m - 1) + n;
            const Rational exact = Rational(n) * (m + 1) / 2 + eps * n * m / 4;
            CHECK(paper_scale - exact >= -slack);
            CHECK(paper_scale - exact <= slack);
            const Rational asymptotic = Rational(n * m, 2) * (1 + eps / 2);
            CHECK(paper_scale - asymptotic >= Rational(n, 2) - slack);
            CHECK(paper_scale - asymptotic <= Rational(n, 2) + slack);
        }
    }
    SUBCASE("D(c_i, c_j) is eps*n*m/(2(m-1)) within slack, near the eps*n/2 asymptotic") {
        const Count slack = 2 * static_cast<Count>(family.members[0].support.size());
        for (int i = 0; i < m; ++i) {
            const PairwiseTallies t = pairwise_tallies(family.profiles[static_cast<size_t>(i)]);
            const Rational exact = eps * n * m / (2 * (m - 1));
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                const Rational d(t.d_at(i, j));
                CHECK(d - exact >= -slack);
                CHECK(d - exact <= slack);
            }
        }
    }
    CHECK_THROWS_AS(gen_borda_family(5, eps, n), UsageError);
}

TEST_CASE("bucklin family") {
    const int m = 8;
    const Rational eps(1, 10);
    const Count n = 4800;
    const AdversarialFamily family = gen_bucklin_family(m, eps, n);
    REQUIRE(family.members.size() == 8);
    const Count support_size = static_cast<Count>(family.members[0].support.size()); // C(8,2)=28
    CHECK(support_size == 28);

    for (int i = 0; i < m; ++i) {
        const Profile& profile = family.profiles[static_cast<size_t>(i)];
        const auto top = top_k_counts(profile, m / 4);
        // c_i within the top m/4 at least n(1 - 3 eps/4) times (minus rounding)
        CHECK(Rational(top[static_cast<size_t>(i)]) >= Rational(n) * (1 - eps * 3 / 4) - support_size);
        // any other candidate at most n/3 - eps*n/12 (plus rounding)
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            CHECK(Rational(top[static_cast<size_t>(j)]) <=
                  Rational(n, 3) - eps * n / 12 + support_size);
        }
        CHECK(evaluate_winner(profile, RuleSpec::bucklin()) == i);
    }
    CHECK_THROWS_AS(gen_bucklin_family(6, eps, n), UsageError);
}

TEST_CASE("KL divergence") {
    const BallotDistribution uniform = two_point(Rational(1, 2), Rational(1, 2));
    const BallotDistribution point = two_point(Rational(1), Rational(0));
    const BallotDistribution skew = two_point(Rational(3, 4), Rational(1, 4));
    const BallotDistribution wska = two_point(Rational(1, 4), Rational(3, 4));

    CHECK(kl_divergence(uniform, uniform) == 0.0);
    CHECK(kl_divergence(point, uniform) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(kl_divergence(skew, wska) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(kl_divergence(uniform, point), UsageError); // support violation
}

TEST_CASE("KL divergence is non-negative, zero iff equal (random distributions)") {
    Rng rng(9);
    const auto alphabet = testutil::all_approval_sets(2);
    for (int trial = 0; trial < 60; ++trial) {
        auto sample_dist = [&]() {
            BallotDistribution d;
            d.m = 2;
            d.kind = BallotKind::Approval;
            std::vector<long long> weights;
            long long total = 0;
            for (size_t i = 0; i < alphabet.size(); ++i) {
                weights.push_back(1 + static_cast<long long>(rng.below(6)));
                total += weights.back();
            }
            for (size_t i = 0; i < alphabet.size(); ++i)
                d.support.emplace_back(alphabet[i], Rational(weights[static_cast<size_t>(i)], total));
            return d;
        };
        const BallotDistribution p = sample_dist(), q = sample_dist();
        const double kl = kl_divergence(p, q);
        bool equal = true;
        for (size_t i = 0; i < p.support.size(); ++i)
            if (p.support[i].second != q.support[i].second) equal = false;
        if (equal) CHECK(kl == 0.0);
        else CHECK(kl > 0.0);
    }
}

TEST_CASE("generalized JS divergence") {
    const BallotDistribution a = two_point(Rational(1), Rational(0));
    const BallotDistribution b = two_point(Rational(0), Rational(1));
    SUBCASE("identical members give 0") {
        CHECK(generalized_js({a, a, a}) == 0.0);
    }
    SUBCASE("two disjoint point masses give ln 2") {
        CHECK(generalized_js({a, b}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("the 2-member case matches the pairwise definition") {
        const BallotDistribution p = two_point(Rational(3, 4), Rational(1, 4));
        const BallotDistribution q = two_point(Rational(1, 2), Rational(1, 2));
        const BallotDistribution mix = two_point(Rational(5, 8), Rational(3, 8));
        const double pairwise = 0.5 * (kl_divergence(p, mix) + kl_divergence(q, mix));
        CHECK(generalized_js({p, q}) == doctest::Approx(pairwise).epsilon(1e-12));
    }
    CHECK(generalized_js({a, b}) >= 0.0);
}

TEST_CASE("family divergence report") {
    SUBCASE("k-approval (m=16, k=4): KL matches the closed form, well under 2 eps^2") {
        const AdversarialFamily family = gen_kapproval_family(16, 4, Rational(1, 10), 1000);
        const DivergenceReport report = family_divergence_report(family);
        const double eps = 0.1, ratio = 5.0 / 4.0; // M/k
        const double closed = (eps + (1 - eps) / ratio) * std::log(1 - eps + eps * ratio) +
                              (1 - eps) * (1 - 1 / ratio) * std::log(1 - eps);
        for (double kl : report.kl_to_mixture) {
            CHECK(kl == doctest::Approx(closed).epsilon(1e-9));
            CHECK(kl <= 2 * eps * eps);
        }
        CHECK(report.js == doctest::Approx(closed).epsilon(1e-9));
    }
    SUBCASE("borda closed form against the generic calculator at m=4") {
        // test-side oracle: build the full 24-ranking distributions directly
        const Rational eps(1, 5);
        std::vector<BallotDistribution> members;
        const auto rankings = testutil::all_rankings(4);
        for (int i = 0; i < 4; ++i) {
            BallotDistribution d;
            d.m = 4;
            d.kind = BallotKind::Ranked;
            for (const Ballot& r : rankings) {
                int pos = 0;
                while (r.seq[static_cast<size_t>(pos)] != i) ++pos;
                const Rational mass = (pos < 2 ? Rational(1 + eps) : Rational(1 - eps)) / 24;
                d.support.emplace_back(r, mass);
            }
            d.validate();
            members.push_back(std::move(d));
        }
        const double generic = generalized_js(members);
        const AdversarialFamily family = gen_borda_family(4, eps, 1200);
        const DivergenceReport report = family_divergence_report(family);
        CHECK(report.js == doctest::Approx(generic).epsilon(1e-9));
        CHECK(report.js <= 0.2 * 0.2); // eps^2 bound
    }
    SUBCASE("bucklin family report matches its two-class closed form (not O(eps^2))") {
        const AdversarialFamily family = gen_bucklin_family(8, Rational(1, 10), 400);
        const DivergenceReport report = family_divergence_report(family);
        const double eps = 0.1;
        const double closed = (1 - 0.75 * eps) * std::log(4 - 3 * eps) + 0.75 * eps * std::log(eps);
        for (double kl : report.kl_to_mixture) CHECK(kl == doctest::Approx(closed).epsilon(1e-9));
    }
    SUBCASE("near-zero eps drives k-approval and borda divergences to 0") {
        const DivergenceReport ka =
            family_divergence_report(gen_kapproval_family(8, 3, Rational(1, 1000), 100));
        CHECK(ka.js < 1e-4);
        const DivergenceReport bo = family_divergence_report(gen_borda_family(4, Rational(1, 1000), 100));
        CHECK(bo.js < 1e-4);
    }
}

TEST_CASE("quadratic scaling band for k-approval and borda families") {
    const double ka1 = family_divergence_report(gen_kapproval_family(16, 4, Rational(1, 10), 100)).js;
    const double ka2 = family_divergence_report(gen_kapproval_family(16, 4, Rational(1, 5), 100)).js;
    CHECK(ka2 / ka1 >= 3.0);
    CHECK(ka2 / ka1 <= 5.0);
    const double bo1 = family_divergence_report(gen_borda_family(6, Rational(1, 10), 100)).js;
    const double bo2 = family_divergence_report(gen_borda_family(6, Rational(1, 5), 100)).js;
    CHECK(bo2 / bo1 >= 3.0);
    CHECK(bo2 / bo1 <= 5.0);
}
