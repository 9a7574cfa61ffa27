#include "ordagree/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ordagree/dispersion.hpp"

namespace ordagree {

namespace {

// Stream-id tags keeping the seed-derivation domains disjoint.
constexpr std::uint64_t kTagReplicate = 1;
constexpr std::uint64_t kTagPseudoBuild = 2;
constexpr std::uint64_t kTagRetry = 3;

}  // namespace

const char* to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::nonparametric: return "nonparametric";
        case SchemeKind::parametric: return "parametric";
        case SchemeKind::pseudo_population: return "pseudo_population";
    }
    return "unknown";
}

SchemeKind scheme_kind_from_string(const std::string& name) {
    if (name == "nonparametric") return SchemeKind::nonparametric;
    if (name == "parametric") return SchemeKind::parametric;
    if (name == "pseudo_population" || name == "pseudo") return SchemeKind::pseudo_population;
    throw std::invalid_argument("unknown bootstrap scheme '" + name + "'");
}

RatingMatrix resample_nonparametric(const RatingMatrix& sample, rng::Stream& stream) {
    // Raters first, then targets, mirroring the two-step design.
    const auto cols = rng::sample_with_replacement(sample.n_raters(), sample.n_raters(), stream);
    const auto rows = rng::sample_with_replacement(sample.n_targets(), sample.n_targets(), stream);
    return sample.gather(rows, cols);
}

RatingMatrix resample_parametric(const CategoryDistribution& shares, int n_targets, int n_raters,
                                 rng::Stream& stream) {
    const rng::CategoricalSampler sampler(shares.cumulative_shares());
    std::vector<int> cells(static_cast<std::size_t>(n_targets) * static_cast<std::size_t>(n_raters));
    for (auto& cell : cells) cell = sampler.draw(stream);
    return RatingMatrix(n_targets, n_raters, shares.levels(), std::move(cells));
}

namespace {

// Index list for one margin of the pseudo-population: every unit
// floor(N/n) times, then a without-replacement completion draw.
std::vector<int> replicate_and_complete(int sample_size, int population_size,
                                        rng::Stream& stream) {
    const int copies = population_size / sample_size;
    const int remainder = population_size - copies * sample_size;
    std::vector<int> indices;
    indices.reserve(static_cast<std::size_t>(population_size));
    for (int c = 0; c < copies; ++c) {
        for (int u = 0; u < sample_size; ++u) indices.push_back(u);
    }
    if (remainder > 0) {
        const auto extra = rng::sample_without_replacement(sample_size, remainder, stream);
        indices.insert(indices.end(), extra.begin(), extra.end());
    }
    return indices;
}

std::vector<int> identity_indices(int n) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    return idx;
}

}  // namespace

RatingMatrix build_pseudo_population(const RatingMatrix& sample, int population_targets,
                                     int population_raters, rng::Stream& stream) {
    if (population_raters < sample.n_raters() || population_targets < sample.n_targets()) {
        throw std::invalid_argument("build_pseudo_population: population sizes " +
                                    std::to_string(population_targets) + "x" +
                                    std::to_string(population_raters) +
                                    " smaller than the sample " +
                                    std::to_string(sample.n_targets()) + "x" +
                                    std::to_string(sample.n_raters()));
    }
    // Step 1: rater columns; Step 2: target rows of the widened matrix.
    const auto cols = replicate_and_complete(sample.n_raters(), population_raters, stream);
    const RatingMatrix widened = sample.gather(identity_indices(sample.n_targets()), cols);
    const auto rows = replicate_and_complete(widened.n_targets(), population_targets, stream);
    return widened.gather(rows, identity_indices(widened.n_raters()));
}

RatingMatrix resample_pseudo(const RatingMatrix& pseudo_population, int n_targets, int n_raters,
                             rng::Stream& stream) {
    if (pseudo_population.n_raters() < n_raters || pseudo_population.n_targets() < n_targets) {
        throw std::invalid_argument("resample_pseudo: requested " + std::to_string(n_targets) +
                                    "x" + std::to_string(n_raters) +
                                    " exceeds the pseudo-population " +
                                    std::to_string(pseudo_population.n_targets()) + "x" +
                                    std::to_string(pseudo_population.n_raters()));
    }
    const auto cols = rng::sample_without_replacement(pseudo_population.n_raters(), n_raters, stream);
    const auto rows = rng::sample_without_replacement(pseudo_population.n_targets(), n_targets, stream);
    return pseudo_population.gather(rows, cols);
}

BootstrapReplicates bootstrap_distribution(const RatingMatrix& sample,
                                           const BootstrapScheme& scheme, int replicates,
                                           std::uint64_t seed) {
    if (replicates < 1) {
        throw std::invalid_argument("bootstrap_distribution: need at least 1 replicate");
    }
    BootstrapReplicates out;
    out.scheme = scheme;
    out.seed = seed;
    out.estimates.reserve(static_cast<std::size_t>(replicates));
    out.std_errors.reserve(static_cast<std::size_t>(replicates));

    // Scheme-constant state, built once per initial sample.
    const CategoryDistribution pooled = pooled_distribution(sample);
    RatingMatrix pseudo = sample;
    if (scheme.kind == SchemeKind::pseudo_population) {
        auto build_stream = rng::substream(seed, kTagPseudoBuild);
        pseudo = build_pseudo_population(sample, scheme.population_targets,
                                         scheme.population_raters, build_stream);
    }

    const auto draw_once = [&](rng::Stream& stream) {
        switch (scheme.kind) {
            case SchemeKind::nonparametric: return resample_nonparametric(sample, stream);
            case SchemeKind::parametric:
                return resample_parametric(pooled, sample.n_targets(), sample.n_raters(), stream);
            case SchemeKind::pseudo_population:
                return resample_pseudo(pseudo, sample.n_targets(), sample.n_raters(), stream);
        }
        throw std::logic_error("bootstrap_distribution: unreachable scheme");
    };

    constexpr int kMaxAttempts = 64;
    for (int b = 0; b < replicates; ++b) {
        bool done = false;
        for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
            auto stream = attempt == 0
                              ? rng::substream(seed, kTagReplicate, b)
                              : rng::substream(seed, kTagRetry, b, attempt);
            if (attempt > 0) ++out.retries;
            try {
                const RatingMatrix matrix = draw_once(stream);
                const AgreementEstimate est = estimate_agreement(matrix);
                if (!std::isfinite(est.d_hat_star) || !std::isfinite(est.var_hat)) continue;
                out.estimates.push_back(est.d_hat_star);
                out.std_errors.push_back(est.std_error());
                done = true;
            } catch (const std::exception&) {
                // degenerate replicate; retried with the next substream
            }
        }
        if (!done) {
            throw std::runtime_error("bootstrap_distribution: replicate " + std::to_string(b) +
                                     " failed after " + std::to_string(kMaxAttempts) +
                                     " attempts");
        }
    }
    return out;
}

double sorted_quantile(std::span<const double> sorted_values, double q) {
    if (sorted_values.empty()) {
        throw std::invalid_argument("sorted_quantile: empty sample");
    }
    const auto n = static_cast<double>(sorted_values.size());
    auto rank = static_cast<long long>(std::ceil(q * n));
    rank = std::max<long long>(1, std::min<long long>(rank, sorted_values.size()));
    return sorted_values[static_cast<std::size_t>(rank - 1)];
}

namespace {

void require_level(double level, const char* where) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument(std::string(where) + ": level must be in (0, 1)");
    }
}

void require_replicates(const BootstrapReplicates& replicates, const char* where) {
    if (replicates.size() < 2) {
        throw std::invalid_argument(std::string(where) + ": need at least 2 replicates, got " +
                                    std::to_string(replicates.size()));
    }
}

}  // namespace

IntervalEstimate percentile_interval(const BootstrapReplicates& replicates, double level) {
    require_level(level, "percentile_interval");
    require_replicates(replicates, "percentile_interval");
    std::vector<double> sorted(replicates.estimates.begin(), replicates.estimates.end());
    std::sort(sorted.begin(), sorted.end());
    const double alpha = 1.0 - level;
    return IntervalEstimate{IntervalMethod::percentile, sorted_quantile(sorted, alpha / 2.0),
                            sorted_quantile(sorted, 1.0 - alpha / 2.0), level};
}

IntervalEstimate bootstrap_t_interval(const BootstrapReplicates& replicates,
                                      const AgreementEstimate& point, double level, int* dropped) {
    require_level(level, "bootstrap_t_interval");
    require_replicates(replicates, "bootstrap_t_interval");
    if (!(point.var_hat > 0.0)) {
        throw std::invalid_argument("bootstrap_t_interval: point estimate has zero variance");
    }
    std::vector<double> z;
    z.reserve(replicates.size());
    for (std::size_t b = 0; b < replicates.size(); ++b) {
        const double se = replicates.std_errors[b];
        if (se > 0.0) z.push_back((replicates.estimates[b] - point.d_hat_star) / se);
    }
    const auto n_dropped = static_cast<int>(replicates.size() - z.size());
    if (dropped != nullptr) *dropped = n_dropped;
    if (static_cast<double>(n_dropped) > 0.1 * static_cast<double>(replicates.size())) {
        throw std::runtime_error("bootstrap_t_interval: " + std::to_string(n_dropped) + " of " +
                                 std::to_string(replicates.size()) +
                                 " replicates had zero standard error (degenerate resampling)");
    }
    if (z.size() < 2) {
        throw std::runtime_error("bootstrap_t_interval: fewer than 2 usable replicates");
    }
    std::sort(z.begin(), z.end());
    const double alpha = 1.0 - level;
    const double t_lo = sorted_quantile(z, alpha / 2.0);
    const double t_hi = sorted_quantile(z, 1.0 - alpha / 2.0);
    const double se = point.std_error();
    return IntervalEstimate{IntervalMethod::bootstrap_t, point.d_hat_star - t_hi * se,
                            point.d_hat_star - t_lo * se, level};
}

IntervalEstimate pivotal_interval(const BootstrapReplicates& replicates,
                                  const AgreementEstimate& point, double level) {
    require_level(level, "pivotal_interval");
    require_replicates(replicates, "pivotal_interval");
    std::vector<double> sorted(replicates.estimates.begin(), replicates.estimates.end());
    std::sort(sorted.begin(), sorted.end());
    const double alpha = 1.0 - level;
    const double q_lo = sorted_quantile(sorted, alpha / 2.0);
    const double q_hi = sorted_quantile(sorted, 1.0 - alpha / 2.0);
    return IntervalEstimate{IntervalMethod::pivotal, 2.0 * point.d_hat_star - q_hi,
                            2.0 * point.d_hat_star - q_lo, level};
}

}  // namespace ordagree
