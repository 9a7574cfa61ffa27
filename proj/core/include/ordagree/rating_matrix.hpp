#pragma once

#include <span>
#include <vector>

namespace ordagree {

/// Complete grid of ordinal scores: one row per target, one column per
/// rater, every cell in {1, ..., K}. Immutable after construction.
///
/// Single-rater (1-column) matrices are representable — resampling and
/// per-row statistics are defined for them — but every operation that
/// applies the n_R/(n_R - 1) correction requires at least two raters.
class RatingMatrix {
public:
    RatingMatrix(int n_targets, int n_raters, int levels, std::vector<int> cells);

    int n_targets() const { return n_targets_; }
    int n_raters() const { return n_raters_; }
    int levels() const { return levels_; }

    /// Score by rater j (0-based column) for target i (0-based row).
    int at(int target, int rater) const {
        return cells_[static_cast<std::size_t>(target) * static_cast<std::size_t>(n_raters_) +
                      static_cast<std::size_t>(rater)];
    }

    /// All scores for one target, in rater order.
    std::span<const int> row(int target) const {
        return {cells_.data() + static_cast<std::size_t>(target) * static_cast<std::size_t>(n_raters_),
                static_cast<std::size_t>(n_raters_)};
    }

    std::span<const int> cells() const { return cells_; }

    /// Submatrix built from (possibly repeated) row and column indices,
    /// in the given order. The workhorse of every resampling scheme.
    RatingMatrix gather(std::span<const int> target_rows, std::span<const int> rater_columns) const;

    /// Swapped orientation (targets become raters and vice versa).
    RatingMatrix transposed() const;

    friend bool operator==(const RatingMatrix&, const RatingMatrix&) = default;

private:
    int n_targets_;
    int n_raters_;
    int levels_;
    std::vector<int> cells_;  // row-major
};

}  // namespace ordagree
