#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ordagree/agreement.hpp"
#include "ordagree/category_distribution.hpp"
#include "ordagree/inference.hpp"
#include "ordagree/rating_matrix.hpp"
#include "ordagree/rng.hpp"

namespace ordagree {

enum class SchemeKind { nonparametric, parametric, pseudo_population };

const char* to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string& name);

/// How bootstrap matrices are drawn from an initial sample. The
/// pseudo-population scheme additionally needs the finite-population
/// sizes the sample came from.
struct BootstrapScheme {
    SchemeKind kind = SchemeKind::nonparametric;
    int population_targets = 0;  ///< N_T, pseudo_population only
    int population_raters = 0;   ///< N_R, pseudo_population only

    static BootstrapScheme nonparametric() { return {SchemeKind::nonparametric, 0, 0}; }
    static BootstrapScheme parametric() { return {SchemeKind::parametric, 0, 0}; }
    static BootstrapScheme pseudo_population(int population_targets, int population_raters) {
        return {SchemeKind::pseudo_population, population_targets, population_raters};
    }
};

/// The replicate estimates d*_b and their plug-in standard errors se*_b,
/// as produced by one bootstrap pass.
struct BootstrapReplicates {
    std::vector<double> estimates;
    std::vector<double> std_errors;
    BootstrapScheme scheme;
    std::uint64_t seed = 0;
    int retries = 0;  ///< replicates redrawn from the next substream

    std::size_t size() const { return estimates.size(); }
};

/// Rater columns redrawn with replacement, then target rows with
/// replacement; the classic i.i.d. bootstrap on both margins.
RatingMatrix resample_nonparametric(const RatingMatrix& sample, rng::Stream& stream);

/// Matrix of i.i.d. categorical draws from the estimated shares.
RatingMatrix resample_parametric(const CategoryDistribution& shares, int n_targets, int n_raters,
                                 rng::Stream& stream);

/// Builds the synthetic finite population: columns replicated
/// floor(N_R/n_R) times and completed by a without-replacement draw,
/// then the same construction applied to the rows of that result.
RatingMatrix build_pseudo_population(const RatingMatrix& sample, int population_targets,
                                     int population_raters, rng::Stream& stream);

/// Redraws a sample from the pseudo-population with the original design:
/// SRSWOR of n_raters columns, then SRSWOR of n_targets rows.
RatingMatrix resample_pseudo(const RatingMatrix& pseudo_population, int n_targets, int n_raters,
                             rng::Stream& stream);

/// Runs B bootstrap replicates under `scheme`, estimating d*_b and its
/// plug-in standard error on each. Replicate b draws from the substream
/// (seed, b), so any subset is reproducible in isolation; for the
/// pseudo-population scheme the pseudo-population is built once and
/// reused across all replicates.
BootstrapReplicates bootstrap_distribution(const RatingMatrix& sample,
                                           const BootstrapScheme& scheme, int replicates,
                                           std::uint64_t seed);

/// Lower nearest-rank quantile of a sorted vector: the value at 1-based
/// index ceil(q * n), clamped to [1, n].
double sorted_quantile(std::span<const double> sorted_values, double q);

/// [Q_{a/2}, Q_{1-a/2}] of the replicate estimates.
IntervalEstimate percentile_interval(const BootstrapReplicates& replicates, double level);

/// Studentized interval: quantiles of z*_b = (d*_b - d*) / se*_b applied
/// to the point estimate's standard error. Replicates with zero se*_b
/// are dropped (count reported through `dropped`); more than 10% dropped
/// is treated as degenerate resampling and throws.
IntervalEstimate bootstrap_t_interval(const BootstrapReplicates& replicates,
                                      const AgreementEstimate& point, double level,
                                      int* dropped = nullptr);

/// Reflection interval [2 d* - Q_{1-a/2}, 2 d* - Q_{a/2}].
IntervalEstimate pivotal_interval(const BootstrapReplicates& replicates,
                                  const AgreementEstimate& point, double level);

}  // namespace ordagree
