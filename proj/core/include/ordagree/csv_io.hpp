#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ordagree/rating_matrix.hpp"
#include "ordagree/simulation.hpp"

namespace ordagree::io {

struct CsvOptions {
    std::optional<int> levels;               ///< K; inferred from the data when absent
    std::optional<std::string> group_column; ///< label column name; "group" auto-detected
    bool transpose = false;                  ///< input has raters as rows
};

/// A parsed rating matrix plus whatever labeling the file carried.
struct LabeledMatrix {
    RatingMatrix matrix;
    std::vector<std::string> group_labels;  ///< one per target; empty if no group column
    bool levels_inferred = false;           ///< K taken as the maximum observed score
};

/// Reads a rating CSV: header row, one row per target, integer rater
/// columns, optional group-label column. Errors carry file/row/column
/// coordinates. Inferring K emits no I/O — callers surface the
/// levels_inferred flag as a warning.
LabeledMatrix parse_matrix_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Distinct group labels in order of first appearance.
std::vector<std::string> group_order(const LabeledMatrix& labeled);

/// Submatrix of the targets carrying `label`.
RatingMatrix group_submatrix(const LabeledMatrix& labeled, const std::string& label);

/// Study configuration file: flat key=value lines, '#' comments.
/// Recognized keys: S, B, n_T, n_R, level, seed, N_T, N_R, p, target_d,
/// schemes, methods, workers, raw_output. Unknown keys are errors.
/// Defaults are the reference design (S=1000, B=1000, n_T=50, n_R=7,
/// level=0.95, N_T=150, N_R=28, p=0.1,0.2,0.35,0.25,0.1).
struct StudyFileConfig {
    StudyConfig study;
    PopulationSpec population{150, 28, CategoryDistribution({0.1, 0.2, 0.35, 0.25, 0.1}), 0};
    std::optional<double> target_d;          ///< rescale p to this theoretical d
    std::optional<std::string> raw_output;   ///< path for the per-sample estimate dump
    bool seed_given = false;
};

StudyFileConfig parse_study_config(const std::filesystem::path& path);

/// Writes `contents` to `path` atomically (temp file + rename), so
/// failed runs leave no partial output behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace ordagree::io
