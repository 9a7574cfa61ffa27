#pragma once

#include <span>
#include <vector>

namespace ordagree {

/// Probability vector (p_1, ..., p_K) over the levels of a K-point
/// ordinal scale, with its cumulative shares F_k precomputed.
///
/// Invariants: K >= 2 (a 1-level scale carries no dispersion), every
/// p_k >= 0, and the entries sum to 1 within 1e-12.
class CategoryDistribution {
public:
    explicit CategoryDistribution(std::vector<double> probabilities);

    int levels() const { return static_cast<int>(p_.size()); }

    /// p_k for level k in 1..K.
    double probability(int level) const { return p_[static_cast<std::size_t>(level - 1)]; }

    /// F_k = sum of p_1..p_k for level k in 1..K (F_K == 1).
    double cumulative(int level) const { return f_[static_cast<std::size_t>(level - 1)]; }

    std::span<const double> probabilities() const { return p_; }
    std::span<const double> cumulative_shares() const { return f_; }

    /// Mean of the integer-scored level variable.
    double mean_score() const;

    bool is_point_mass() const;

private:
    std::vector<double> p_;
    std::vector<double> f_;
};

}  // namespace ordagree
