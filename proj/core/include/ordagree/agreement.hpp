#pragma once

#include <cmath>
#include <vector>

#include "ordagree/rating_matrix.hpp"

namespace ordagree {

/// Point estimates of the normalized agreement-dispersion index for one
/// rating matrix, with the per-target components they were pooled from.
struct AgreementEstimate {
    double d_hat = 0.0;        ///< mean per-target dispersion over (K-1)/2
    double d_hat_star = 0.0;   ///< bias-corrected: d_hat * n_R / (n_R - 1)
    double var_hat = 0.0;      ///< plug-in variance of d_hat_star
    std::vector<double> per_target_dispersion;
    int n_targets = 0;
    int n_raters = 0;
    int levels = 0;
    /// The correction can push d_hat_star past 1 at very small rater
    /// counts; the value is reported raw and this flag set instead of
    /// truncating (truncation would reintroduce the bias).
    bool exceeds_unit = false;

    double std_error() const { return std::sqrt(var_hat); }
};

/// Full estimation pass over a matrix: per-target dispersions, pooled
/// normalized index, unbiased correction, and the plug-in variance with
/// sigma^2 and J from the pooled shares and the raw pooled dispersion in
/// the squared term. Requires n_raters >= 2.
AgreementEstimate estimate_agreement(const RatingMatrix& matrix);

}  // namespace ordagree
