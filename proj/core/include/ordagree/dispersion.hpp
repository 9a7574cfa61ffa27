#pragma once

#include <optional>
#include <span>

#include "ordagree/category_distribution.hpp"
#include "ordagree/rating_matrix.hpp"

namespace ordagree {

/// Empirical category shares of one target's row of scores.
/// Throws std::invalid_argument naming any score outside 1..levels.
CategoryDistribution empirical_distribution(std::span<const int> row, int levels);

/// Leti dispersion index D = 2 * sum_{k<K} F_k (1 - F_k).
/// Zero iff the distribution is a point mass; at most (K-1)/2.
double leti_dispersion(const CategoryDistribution& dist);

/// Maximum attainable D: (K-1)/2, or with an odd observation count N,
/// (K-1)/2 * (1 - 1/N^2). Normalization always uses the plain (K-1)/2.
double max_dispersion(int levels, std::optional<long long> n_observations = std::nullopt);

/// d = D / ((K-1)/2), the [0,1]-normalized dispersion.
/// Throws if D exceeds the maximum by more than 1e-9.
double normalize_dispersion(double dispersion, int levels);

/// Per-target estimate: the Leti index of the row's empirical shares.
/// Identical to gini_mean_difference(row) up to rounding.
double per_target_dispersion(std::span<const int> row, int levels);

/// Gini mean difference with the 1/n^2 convention: the average absolute
/// score difference over all ordered rater pairs, diagonal included.
double gini_mean_difference(std::span<const int> row);
double gini_mean_difference(std::span<const double> row);

/// Category shares pooled over every cell of the matrix; equals the mean
/// of the per-target empirical distributions.
CategoryDistribution pooled_distribution(const RatingMatrix& matrix);

/// Variance of the integer-scored level variable.
double score_variance(const CategoryDistribution& dist);

/// Second moment of the mean absolute deviation from a random score:
/// J = E[g(X)^2] with g(x) = E|x - X'|. Computed via the O(K^2)
/// factored form J = sum_k p_k (sum_h |k-h| p_h)^2.
double gini_second_moment(const CategoryDistribution& dist);

/// Exact finite-sample variance of the per-target dispersion estimate
/// from the raw moment ingredients:
///   (1/n^2 - 1/n^3) * (4 sigma^2 + 4(n-2) J - 2(2n-3) D^2).
/// Requires n_raters >= 2.
double dispersion_variance(double sigma_squared, double second_moment, double dispersion,
                           int n_raters);

/// Same, with all three moments taken from `dist`.
double dispersion_variance(const CategoryDistribution& dist, int n_raters);

/// Large-rater-count approximation 4 (J - D^2) / n.
double dispersion_variance_asymptotic(const CategoryDistribution& dist, int n_raters);

}  // namespace ordagree
