#include "ballotbox/score_vector.hpp"

#include "ballotbox/errors.hpp"

namespace ballotbox {

ScoreVector::ScoreVector(std::vector<Rational> alphas) {
    if (alphas.size() < 2) throw UsageError("score vector needs at least 2 entries");
    for (size_t i = 1; i < alphas.size(); ++i)
        if (alphas[i] > alphas[i - 1]) throw UsageError("score vector must be non-increasing");
    const Rational lo = alphas.back();
    const Rational span = alphas.front() - lo;
    if (span == 0) throw UsageError("score vector must satisfy alpha_1 > alpha_m");
    alphas_.reserve(alphas.size());
    for (const Rational& a : alphas) alphas_.push_back((a - lo) / span);
}

ScoreVector ScoreVector::borda(int m) {
    std::vector<Rational> a;
    a.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) a.emplace_back(m - 1 - i);
    return ScoreVector(std::move(a));
}

ScoreVector ScoreVector::k_approval(int m, int k) {
    if (k < 1 || k >= m) throw UsageError("k-approval requires 1 <= k <= m-1");
    std::vector<Rational> a(static_cast<size_t>(m), Rational(0));
    for (int i = 0; i < k; ++i) a[static_cast<size_t>(i)] = 1;
    return ScoreVector(std::move(a));
}

} // namespace ballotbox
