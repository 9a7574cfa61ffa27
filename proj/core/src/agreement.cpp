#include "ordagree/agreement.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ordagree/dispersion.hpp"

namespace ordagree {

AgreementEstimate estimate_agreement(const RatingMatrix& matrix) {
    const int n_raters = matrix.n_raters();
    if (n_raters < 2) {
        throw std::invalid_argument(
            "estimate_agreement: the n_R/(n_R-1) correction needs at least 2 raters, got " +
            std::to_string(n_raters));
    }
    const int n_targets = matrix.n_targets();
    const int levels = matrix.levels();

    AgreementEstimate est;
    est.n_targets = n_targets;
    est.n_raters = n_raters;
    est.levels = levels;
    est.per_target_dispersion.resize(static_cast<std::size_t>(n_targets));

    double mean_dispersion = 0.0;
    for (int i = 0; i < n_targets; ++i) {
        const double di = per_target_dispersion(matrix.row(i), levels);
        est.per_target_dispersion[static_cast<std::size_t>(i)] = di;
        mean_dispersion += di;
    }
    mean_dispersion /= static_cast<double>(n_targets);

    const double dmax = max_dispersion(levels);
    const double correction = static_cast<double>(n_raters) / static_cast<double>(n_raters - 1);
    est.d_hat = mean_dispersion / dmax;
    est.d_hat_star = est.d_hat * correction;
    est.exceeds_unit = est.d_hat_star > 1.0;

    const CategoryDistribution pooled = pooled_distribution(matrix);
    const double v = dispersion_variance(score_variance(pooled), gini_second_moment(pooled),
                                         mean_dispersion, n_raters);
    est.var_hat = std::max(
        0.0, correction * correction * v / (dmax * dmax * static_cast<double>(n_targets)));
    return est;
}

}  // namespace ordagree
