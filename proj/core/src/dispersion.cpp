#include "ordagree/dispersion.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordagree {

namespace {

std::vector<int> count_levels(std::span<const int> row, int levels) {
    if (row.empty()) {
        throw std::invalid_argument("empirical_distribution: empty row");
    }
    std::vector<int> counts(static_cast<std::size_t>(levels), 0);
    for (const int score : row) {
        if (score < 1 || score > levels) {
            throw std::invalid_argument("score " + std::to_string(score) + " outside 1.." +
                                        std::to_string(levels));
        }
        ++counts[static_cast<std::size_t>(score - 1)];
    }
    return counts;
}

// D from cumulative counts, avoiding the intermediate distribution object
// in the per-row hot path.
double dispersion_from_counts(const std::vector<int>& counts, double n) {
    double d = 0.0;
    long long acc = 0;
    for (std::size_t k = 0; k + 1 < counts.size(); ++k) {
        acc += counts[k];
        const double f = static_cast<double>(acc) / n;
        d += f * (1.0 - f);
    }
    return 2.0 * d;
}

}  // namespace

CategoryDistribution empirical_distribution(std::span<const int> row, int levels) {
    const auto counts = count_levels(row, levels);
    const auto n = static_cast<double>(row.size());
    std::vector<double> p(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) p[k] = static_cast<double>(counts[k]) / n;
    return CategoryDistribution(std::move(p));
}

double leti_dispersion(const CategoryDistribution& dist) {
    const auto f = dist.cumulative_shares();
    double d = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) d += f[k] * (1.0 - f[k]);
    return 2.0 * d;
}

double max_dispersion(int levels, std::optional<long long> n_observations) {
    if (levels < 2) {
        throw std::invalid_argument("max_dispersion: need at least 2 levels, got " +
                                    std::to_string(levels));
    }
    const double base = static_cast<double>(levels - 1) / 2.0;
    if (n_observations.has_value()) {
        const long long n = *n_observations;
        if (n < 1) {
            throw std::invalid_argument("max_dispersion: observation count must be positive");
        }
        if (n % 2 != 0) {
            const auto nd = static_cast<double>(n);
            return base * (1.0 - 1.0 / (nd * nd));
        }
    }
    return base;
}

double normalize_dispersion(double dispersion, int levels) {
    const double dmax = max_dispersion(levels);
    if (dispersion < 0.0 || dispersion > dmax + 1e-9) {
        throw std::invalid_argument("normalize_dispersion: D = " + std::to_string(dispersion) +
                                    " outside [0, " + std::to_string(dmax) + "]");
    }
    return std::min(dispersion / dmax, 1.0);
}

double per_target_dispersion(std::span<const int> row, int levels) {
    const auto counts = count_levels(row, levels);
    return dispersion_from_counts(counts, static_cast<double>(row.size()));
}

double gini_mean_difference(std::span<const int> row) {
    if (row.empty()) {
        throw std::invalid_argument("gini_mean_difference: empty row");
    }
    long long sum = 0;
    for (std::size_t a = 0; a < row.size(); ++a) {
        for (std::size_t b = a + 1; b < row.size(); ++b) {
            sum += std::abs(row[a] - row[b]);
        }
    }
    const auto n = static_cast<double>(row.size());
    return 2.0 * static_cast<double>(sum) / (n * n);
}

double gini_mean_difference(std::span<const double> row) {
    if (row.empty()) {
        throw std::invalid_argument("gini_mean_difference: empty row");
    }
    double sum = 0.0;
    for (std::size_t a = 0; a < row.size(); ++a) {
        for (std::size_t b = a + 1; b < row.size(); ++b) {
            sum += std::abs(row[a] - row[b]);
        }
    }
    const auto n = static_cast<double>(row.size());
    return 2.0 * sum / (n * n);
}

CategoryDistribution pooled_distribution(const RatingMatrix& matrix) {
    std::vector<long long> counts(static_cast<std::size_t>(matrix.levels()), 0);
    for (const int score : matrix.cells()) ++counts[static_cast<std::size_t>(score - 1)];
    const auto total = static_cast<double>(matrix.cells().size());
    std::vector<double> p(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) p[k] = static_cast<double>(counts[k]) / total;
    return CategoryDistribution(std::move(p));
}

double score_variance(const CategoryDistribution& dist) {
    const auto p = dist.probabilities();
    double first = 0.0;
    double second = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const auto score = static_cast<double>(k + 1);
        first += score * p[k];
        second += score * score * p[k];
    }
    return second - first * first;
}

double gini_second_moment(const CategoryDistribution& dist) {
    const auto p = dist.probabilities();
    const auto levels = static_cast<int>(p.size());
    double j = 0.0;
    for (int k = 0; k < levels; ++k) {
        double g = 0.0;
        for (int h = 0; h < levels; ++h) {
            g += static_cast<double>(std::abs(k - h)) * p[static_cast<std::size_t>(h)];
        }
        j += p[static_cast<std::size_t>(k)] * g * g;
    }
    return j;
}

double dispersion_variance(double sigma_squared, double second_moment, double dispersion,
                           int n_raters) {
    if (n_raters < 2) {
        throw std::invalid_argument("dispersion_variance: need at least 2 raters, got " +
                                    std::to_string(n_raters));
    }
    const auto n = static_cast<double>(n_raters);
    const double prefactor = 1.0 / (n * n) - 1.0 / (n * n * n);
    const double bracket = 4.0 * sigma_squared + 4.0 * (n - 2.0) * second_moment -
                           2.0 * (2.0 * n - 3.0) * dispersion * dispersion;
    return prefactor * bracket;
}

double dispersion_variance(const CategoryDistribution& dist, int n_raters) {
    return dispersion_variance(score_variance(dist), gini_second_moment(dist),
                               leti_dispersion(dist), n_raters);
}

double dispersion_variance_asymptotic(const CategoryDistribution& dist, int n_raters) {
    if (n_raters < 2) {
        throw std::invalid_argument("dispersion_variance_asymptotic: need at least 2 raters");
    }
    const double d = leti_dispersion(dist);
    return 4.0 * (gini_second_moment(dist) - d * d) / static_cast<double>(n_raters);
}

}  // namespace ordagree
