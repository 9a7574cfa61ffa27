#pragma once

#include <cstdint>
#include <vector>

#include "ordagree/category_distribution.hpp"
#include "ordagree/inference.hpp"
#include "ordagree/rating_matrix.hpp"
#include "ordagree/resampling.hpp"
#include "ordagree/rng.hpp"

namespace ordagree {

/// Finite population to generate: N_T targets by N_R raters of i.i.d.
/// categorical scores.
struct PopulationSpec {
    int n_targets = 150;
    int n_raters = 28;
    CategoryDistribution shares;
    std::uint64_t seed = 0;
};

struct Population {
    RatingMatrix matrix;
    double index_d = 0.0;  ///< realized census value of the agreement index
};

/// Census value of the normalized dispersion index for a finite
/// population matrix: per-row Gini mean difference over distinct rater
/// pairs, averaged and normalized. This is the parameter the two-stage
/// d* estimator is unbiased for, and the target coverage is scored
/// against.
double population_index(const RatingMatrix& population);

Population generate_population(const PopulationSpec& spec);

/// SRSWOR of n_raters columns, then SRSWOR of n_targets rows — raters
/// first, matching the study design.
RatingMatrix draw_two_stage_sample(const RatingMatrix& population, int n_targets, int n_raters,
                                   rng::Stream& stream);

/// Deterministically rescales a distribution's dispersion by mixing it
/// toward a point mass at its modal level (to lower d) or toward the
/// two-extremes distribution (to raise it), bisecting the mixing weight
/// until the normalized index is within `tolerance` of `target_d`.
CategoryDistribution match_dispersion(const CategoryDistribution& base, double target_d,
                                      double tolerance = 1e-3);

/// Monte Carlo study configuration. Defaults are the reference design:
/// S = 1000 samples, B = 1000 replicates, 50 targets by 7 raters, 95%
/// intervals, all methods under all three schemes.
struct StudyConfig {
    int samples = 1000;
    int replicates = 1000;
    int n_targets = 50;
    int n_raters = 7;
    double level = 0.95;
    std::vector<IntervalMethod> methods = {IntervalMethod::normal, IntervalMethod::percentile,
                                           IntervalMethod::bootstrap_t, IntervalMethod::pivotal};
    std::vector<BootstrapScheme> schemes;  ///< filled by default_schemes() if empty
    std::uint64_t seed = 0;
    int workers = 0;     ///< 0 = hardware concurrency
    bool keep_raw = true;  ///< keep per-sample point estimates for dumping

    /// The three schemes with the population sizes the samples came from.
    static std::vector<BootstrapScheme> default_schemes(int population_targets,
                                                        int population_raters);
};

/// One scheme-by-method cell of the coverage scoreboard, in percent
/// (ECP + LE + RE == 100 exactly) plus the average interval length.
struct CoverageCell {
    SchemeKind scheme = SchemeKind::nonparametric;
    IntervalMethod method = IntervalMethod::normal;
    double ecp = 0.0;
    double le = 0.0;
    double re = 0.0;
    double avg_length = 0.0;
};

/// Mean of the replicate estimates d*_b over all samples and replicates
/// for one scheme — the bootstrap-bias diagnostic.
struct SchemeBias {
    SchemeKind scheme = SchemeKind::nonparametric;
    double mean_replicate_estimate = 0.0;
};

struct CoverageReport {
    double population_d = 0.0;
    int samples = 0;
    int replicates = 0;
    int n_targets = 0;
    int n_raters = 0;
    int levels = 0;
    double level = 0.0;
    std::uint64_t seed = 0;
    long long bootstrap_retries = 0;
    std::vector<CoverageCell> cells;  ///< scheme-major, methods in config order
    std::vector<SchemeBias> bias;
    std::vector<double> raw_estimates;  ///< per-sample d*, when kept
};

/// How an interval scored against the population value (closed-interval
/// indicator: covered iff lower <= d <= upper).
enum class IntervalOutcome { covered, left_miss, right_miss };
IntervalOutcome score_interval(const IntervalEstimate& interval, double population_d);

/// Full coverage study over `config.samples` two-stage samples. Sample
/// s derives every random stream from (seed, s), so the report is
/// byte-reproducible for a given seed regardless of worker count.
CoverageReport run_study(const RatingMatrix& population, const StudyConfig& config);

}  // namespace ordagree
