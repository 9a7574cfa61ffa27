#include "ordagree/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ordagree {

namespace {

template <typename T>
double row_variance(std::span<const T> row, VarianceDivisor divisor, const char* where) {
    if (row.size() < 2) {
        throw std::invalid_argument(std::string(where) + ": need at least 2 raters, got " +
                                    std::to_string(row.size()));
    }
    double mean = 0.0;
    for (const T x : row) mean += static_cast<double>(x);
    mean /= static_cast<double>(row.size());
    double ss = 0.0;
    for (const T x : row) {
        const double dev = static_cast<double>(x) - mean;
        ss += dev * dev;
    }
    const double denom = divisor == VarianceDivisor::n_minus_1
                             ? static_cast<double>(row.size() - 1)
                             : static_cast<double>(row.size());
    return ss / denom;
}

template <typename T>
double cv_percent_impl(std::span<const T> row, VarianceDivisor divisor) {
    const double variance = row_variance(row, divisor, "cv_percent");
    double mean = 0.0;
    for (const T x : row) mean += static_cast<double>(x);
    mean /= static_cast<double>(row.size());
    if (!(mean > 0.0)) {
        throw std::invalid_argument("cv_percent: row mean must be positive");
    }
    return 100.0 * std::sqrt(variance) / mean;
}

}  // namespace

double uniform_null_variance(int levels) {
    if (levels < 2) {
        throw std::invalid_argument("uniform_null_variance: need at least 2 levels");
    }
    const auto k = static_cast<double>(levels);
    return (k * k - 1.0) / 12.0;
}

double r_wg(std::span<const int> row, int levels, VarianceDivisor divisor) {
    for (const int score : row) {
        if (score < 1 || score > levels) {
            throw std::invalid_argument("r_wg: score " + std::to_string(score) + " outside 1.." +
                                        std::to_string(levels));
        }
    }
    return 1.0 - row_variance(row, divisor, "r_wg") / uniform_null_variance(levels);
}

double cv_percent(std::span<const int> row, VarianceDivisor divisor) {
    return cv_percent_impl(row, divisor);
}

double cv_percent(std::span<const double> row, VarianceDivisor divisor) {
    return cv_percent_impl(row, divisor);
}

double icc_a1(std::span<const double> cells, int n_targets, int n_raters, bool* degenerate) {
    if (n_targets < 2 || n_raters < 2) {
        throw std::invalid_argument("icc_a1: need at least a 2x2 layout, got " +
                                    std::to_string(n_targets) + "x" + std::to_string(n_raters));
    }
    if (cells.size() != static_cast<std::size_t>(n_targets) * static_cast<std::size_t>(n_raters)) {
        throw std::invalid_argument("icc_a1: cell count does not match the layout");
    }
    if (degenerate != nullptr) *degenerate = false;

    const auto nt = static_cast<double>(n_targets);
    const auto nr = static_cast<double>(n_raters);
    const auto cell = [&](int i, int j) {
        return cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_raters) +
                     static_cast<std::size_t>(j)];
    };

    double grand = 0.0;
    std::vector<double> row_mean(static_cast<std::size_t>(n_targets), 0.0);
    std::vector<double> col_mean(static_cast<std::size_t>(n_raters), 0.0);
    for (int i = 0; i < n_targets; ++i) {
        for (int j = 0; j < n_raters; ++j) {
            const double x = cell(i, j);
            grand += x;
            row_mean[static_cast<std::size_t>(i)] += x;
            col_mean[static_cast<std::size_t>(j)] += x;
        }
    }
    grand /= nt * nr;
    for (auto& m : row_mean) m /= nr;
    for (auto& m : col_mean) m /= nt;

    double ss_rows = 0.0;
    for (const double m : row_mean) ss_rows += (m - grand) * (m - grand);
    ss_rows *= nr;
    double ss_cols = 0.0;
    for (const double m : col_mean) ss_cols += (m - grand) * (m - grand);
    ss_cols *= nt;
    double ss_resid = 0.0;
    for (int i = 0; i < n_targets; ++i) {
        for (int j = 0; j < n_raters; ++j) {
            const double dev = cell(i, j) - row_mean[static_cast<std::size_t>(i)] -
                               col_mean[static_cast<std::size_t>(j)] + grand;
            ss_resid += dev * dev;
        }
    }

    const double ms_rows = ss_rows / (nt - 1.0);
    const double ms_cols = ss_cols / (nr - 1.0);
    const double ms_resid = ss_resid / ((nt - 1.0) * (nr - 1.0));

    const double numerator = ms_rows - ms_resid;
    const double denominator = ms_rows + (nr - 1.0) * ms_resid + (nr / nt) * (ms_cols - ms_resid);
    if (denominator == 0.0) {
        if (degenerate != nullptr) *degenerate = true;
        if (numerator == 0.0) return 1.0;  // all cells identical
        return numerator > 0.0 ? 1.0 : -1.0;
    }
    return std::clamp(numerator / denominator, -1.0, 1.0);
}

double icc_a1(const RatingMatrix& matrix, bool* degenerate) {
    std::vector<double> cells(matrix.cells().size());
    std::transform(matrix.cells().begin(), matrix.cells().end(), cells.begin(),
                   [](int v) { return static_cast<double>(v); });
    return icc_a1(cells, matrix.n_targets(), matrix.n_raters(), degenerate);
}

ComparisonReport compare_indices(const RatingMatrix& matrix, std::string group_label,
                                 VarianceDivisor divisor, bool clamp_negative_r_wg) {
    ComparisonReport report;
    report.group_label = std::move(group_label);
    report.n_targets = matrix.n_targets();
    report.n_raters = matrix.n_raters();
    report.r_wg_per_target.reserve(static_cast<std::size_t>(matrix.n_targets()));
    report.cv_per_target.reserve(static_cast<std::size_t>(matrix.n_targets()));

    double r_sum = 0.0;
    double cv_sum = 0.0;
    for (int i = 0; i < matrix.n_targets(); ++i) {
        double r = r_wg(matrix.row(i), matrix.levels(), divisor);
        if (clamp_negative_r_wg) r = std::max(0.0, r);
        const double cv = cv_percent(matrix.row(i), divisor);
        report.r_wg_per_target.push_back(r);
        report.cv_per_target.push_back(cv);
        r_sum += r;
        cv_sum += cv;
    }
    report.r_wg_mean = r_sum / static_cast<double>(matrix.n_targets());
    report.cv_mean_percent = cv_sum / static_cast<double>(matrix.n_targets());
    report.icc = matrix.n_targets() >= 2 ? icc_a1(matrix, &report.icc_degenerate)
                                         : std::numeric_limits<double>::quiet_NaN();
    return report;
}

}  // namespace ordagree
