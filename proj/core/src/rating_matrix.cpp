#include "ordagree/rating_matrix.hpp"

#include <stdexcept>
#include <string>

namespace ordagree {

RatingMatrix::RatingMatrix(int n_targets, int n_raters, int levels, std::vector<int> cells)
    : n_targets_(n_targets), n_raters_(n_raters), levels_(levels), cells_(std::move(cells)) {
    if (levels_ < 2) {
        throw std::invalid_argument("RatingMatrix: need at least 2 scale levels, got " +
                                    std::to_string(levels_));
    }
    if (n_targets_ < 1 || n_raters_ < 1) {
        throw std::invalid_argument("RatingMatrix: dimensions must be positive, got " +
                                    std::to_string(n_targets_) + "x" + std::to_string(n_raters_));
    }
    const auto expected =
        static_cast<std::size_t>(n_targets_) * static_cast<std::size_t>(n_raters_);
    if (cells_.size() != expected) {
        throw std::invalid_argument("RatingMatrix: expected " + std::to_string(expected) +
                                    " cells, got " + std::to_string(cells_.size()));
    }
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
        const int score = cells_[idx];
        if (score < 1 || score > levels_) {
            const auto i = static_cast<int>(idx) / n_raters_;
            const auto j = static_cast<int>(idx) % n_raters_;
            throw std::invalid_argument("RatingMatrix: score " + std::to_string(score) +
                                        " at (target " + std::to_string(i) + ", rater " +
                                        std::to_string(j) + ") outside 1.." +
                                        std::to_string(levels_));
        }
    }
}

RatingMatrix RatingMatrix::gather(std::span<const int> target_rows,
                                  std::span<const int> rater_columns) const {
    const auto nt = static_cast<int>(target_rows.size());
    const auto nr = static_cast<int>(rater_columns.size());
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(nt) * static_cast<std::size_t>(nr));
    for (const int i : target_rows) {
        const auto base = static_cast<std::size_t>(i) * static_cast<std::size_t>(n_raters_);
        for (const int j : rater_columns) {
            out.push_back(cells_[base + static_cast<std::size_t>(j)]);
        }
    }
    return RatingMatrix(nt, nr, levels_, std::move(out));
}

RatingMatrix RatingMatrix::transposed() const {
    std::vector<int> out(cells_.size());
    for (int i = 0; i < n_targets_; ++i) {
        for (int j = 0; j < n_raters_; ++j) {
            out[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_targets_) +
                static_cast<std::size_t>(i)] = at(i, j);
        }
    }
    return RatingMatrix(n_raters_, n_targets_, levels_, std::move(out));
}

}  // namespace ordagree
