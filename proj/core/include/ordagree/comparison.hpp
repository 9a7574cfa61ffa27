#pragma once

#include <span>
#include <string>
#include <vector>

#include "ordagree/rating_matrix.hpp"

namespace ordagree {

/// Variance divisor for r_WG and CV. The interrater-agreement
/// literature uses the n-1 sample variance; the n divisor is offered so
/// published tables computed either way can be reconciled.
enum class VarianceDivisor { n_minus_1, n };

/// 1 - s^2 / sigma^2_EU with the uniform-null variance (K^2 - 1)/12.
/// May be negative; reported raw (see clamp option on the report).
double r_wg(std::span<const int> row, int levels,
            VarianceDivisor divisor = VarianceDivisor::n_minus_1);

/// Uniform-null between-rater variance (K^2 - 1)/12.
double uniform_null_variance(int levels);

/// 100 * sd / mean of one target's scores.
double cv_percent(std::span<const int> row, VarianceDivisor divisor = VarianceDivisor::n_minus_1);
double cv_percent(std::span<const double> row, VarianceDivisor divisor = VarianceDivisor::n_minus_1);

/// Two-way random-effects, absolute-agreement, single-rater intraclass
/// correlation:
///   (MS_R - MS_E) / (MS_R + (n_R-1) MS_E + (n_R/n_T)(MS_C - MS_E))
/// with target, rater, and residual mean squares from the two-way
/// layout. An all-identical matrix (0/0) is defined as 1 and flagged.
double icc_a1(const RatingMatrix& matrix, bool* degenerate = nullptr);

/// Same computation on a row-major real-valued grid (used to check the
/// shift/scale invariances, which integer ingestion cannot exercise).
double icc_a1(std::span<const double> cells, int n_targets, int n_raters,
              bool* degenerate = nullptr);

/// Per-group row of the baseline-index comparison table.
struct ComparisonReport {
    std::string group_label;
    std::vector<double> r_wg_per_target;
    std::vector<double> cv_per_target;
    double r_wg_mean = 0.0;
    double cv_mean_percent = 0.0;
    double icc = 0.0;
    bool icc_degenerate = false;

    int n_targets = 0;
    int n_raters = 0;
};

/// r_WG and CV per target with their means, plus ICC(A,1), for one
/// group's matrix. `clamp_negative_r_wg` zeroes negative r_WG values in
/// both the per-target vector and the mean.
ComparisonReport compare_indices(const RatingMatrix& matrix, std::string group_label = {},
                                 VarianceDivisor divisor = VarianceDivisor::n_minus_1,
                                 bool clamp_negative_r_wg = false);

}  // namespace ordagree
