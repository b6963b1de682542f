#pragma once

#include "ballotbox/rational.hpp"

#include <vector>

namespace ballotbox {

// Positional score vector in canonical form: non-increasing, alpha_1 = 1,
// alpha_m = 0. Construction applies the affine rescale (a_i - a_m)/(a_1 - a_m);
// the argmax of positional scores is invariant under that map.
class ScoreVector {
public:
    explicit ScoreVector(std::vector<Rational> alphas);

    static ScoreVector borda(int m);
    static ScoreVector k_approval(int m, int k);

    int m() const { return static_cast<int>(alphas_.size()); }
    const std::vector<Rational>& alphas() const { return alphas_; }
    const Rational& alpha(int position) const { return alphas_[static_cast<size_t>(position)]; } // 0-based

    bool operator==(const ScoreVector&) const = default;

private:
    std::vector<Rational> alphas_;
};

} // namespace ballotbox
