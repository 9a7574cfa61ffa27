#include "ordagree/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "ordagree/agreement.hpp"
#include "ordagree/dispersion.hpp"

namespace ordagree {

namespace {

// Stream-id tags; disjoint from the ones used inside resampling.cpp
// because these seed *parent* streams that are mixed again downstream.
constexpr std::uint64_t kTagPopulation = 101;
constexpr std::uint64_t kTagSampleDraw = 102;
constexpr std::uint64_t kTagScheme = 103;

}  // namespace

double population_index(const RatingMatrix& population) {
    if (population.n_raters() < 2) {
        throw std::invalid_argument("population_index: need at least 2 raters per target");
    }
    const auto n = static_cast<double>(population.n_raters());
    double mean = 0.0;
    for (int i = 0; i < population.n_targets(); ++i) {
        // Distinct-pair Gini mean difference of the census row.
        mean += gini_mean_difference(population.row(i)) * n / (n - 1.0);
    }
    mean /= static_cast<double>(population.n_targets());
    return mean / max_dispersion(population.levels());
}

Population generate_population(const PopulationSpec& spec) {
    if (spec.n_targets < 1 || spec.n_raters < 2) {
        throw std::invalid_argument("generate_population: need N_T >= 1 and N_R >= 2");
    }
    auto stream = rng::substream(spec.seed, kTagPopulation);
    const rng::CategoricalSampler sampler(spec.shares.cumulative_shares());
    std::vector<int> cells(static_cast<std::size_t>(spec.n_targets) *
                           static_cast<std::size_t>(spec.n_raters));
    for (auto& cell : cells) cell = sampler.draw(stream);
    RatingMatrix matrix(spec.n_targets, spec.n_raters, spec.shares.levels(), std::move(cells));
    const double d = population_index(matrix);
    return Population{std::move(matrix), d};
}

RatingMatrix draw_two_stage_sample(const RatingMatrix& population, int n_targets, int n_raters,
                                   rng::Stream& stream) {
    if (n_raters > population.n_raters() || n_targets > population.n_targets()) {
        throw std::invalid_argument("draw_two_stage_sample: requested " +
                                    std::to_string(n_targets) + "x" + std::to_string(n_raters) +
                                    " exceeds the population " +
                                    std::to_string(population.n_targets()) + "x" +
                                    std::to_string(population.n_raters()));
    }
    const auto cols = rng::sample_without_replacement(population.n_raters(), n_raters, stream);
    const auto rows = rng::sample_without_replacement(population.n_targets(), n_targets, stream);
    return population.gather(rows, cols);
}

namespace {

double theoretical_d(const CategoryDistribution& dist) {
    return leti_dispersion(dist) / max_dispersion(dist.levels());
}

CategoryDistribution mix(const CategoryDistribution& base, const std::vector<double>& toward,
                         double weight) {
    std::vector<double> p(toward.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = (1.0 - weight) * base.probabilities()[k] + weight * toward[k];
    }
    return CategoryDistribution(std::move(p));
}

}  // namespace

CategoryDistribution match_dispersion(const CategoryDistribution& base, double target_d,
                                      double tolerance) {
    if (target_d < 0.0 || target_d > 1.0) {
        throw std::invalid_argument("match_dispersion: target d must be in [0, 1]");
    }
    const double base_d = theoretical_d(base);
    if (std::abs(base_d - target_d) <= tolerance) return base;

    const auto levels = static_cast<std::size_t>(base.levels());
    std::vector<double> toward(levels, 0.0);
    if (target_d < base_d) {
        // Shrink dispersion: point mass at the modal level.
        const auto p = base.probabilities();
        std::size_t mode = 0;
        for (std::size_t k = 1; k < levels; ++k) {
            if (p[k] > p[mode]) mode = k;
        }
        toward[mode] = 1.0;
    } else {
        // Grow dispersion: equal mass on the two extreme levels.
        toward.front() = 0.5;
        toward.back() = 0.5;
    }

    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double d_mid = theoretical_d(mix(base, toward, mid));
        if (std::abs(d_mid - target_d) <= tolerance * 0.5) {
            return mix(base, toward, mid);
        }
        const bool overshoot = target_d < base_d ? d_mid < target_d : d_mid > target_d;
        (overshoot ? hi : lo) = mid;
    }
    const CategoryDistribution result = mix(base, toward, 0.5 * (lo + hi));
    if (std::abs(theoretical_d(result) - target_d) > tolerance) {
        throw std::runtime_error("match_dispersion: could not reach d = " +
                                 std::to_string(target_d) + " from d = " +
                                 std::to_string(base_d));
    }
    return result;
}

std::vector<BootstrapScheme> StudyConfig::default_schemes(int population_targets,
                                                          int population_raters) {
    return {BootstrapScheme::nonparametric(), BootstrapScheme::parametric(),
            BootstrapScheme::pseudo_population(population_targets, population_raters)};
}

IntervalOutcome score_interval(const IntervalEstimate& interval, double population_d) {
    if (interval.lower > population_d) return IntervalOutcome::left_miss;
    if (interval.upper < population_d) return IntervalOutcome::right_miss;
    return IntervalOutcome::covered;
}

namespace {

struct CellTally {
    long long covered = 0;
    long long left = 0;
    long long right = 0;
    double length_sum = 0.0;

    void add(IntervalOutcome outcome, double length) {
        switch (outcome) {
            case IntervalOutcome::covered: ++covered; break;
            case IntervalOutcome::left_miss: ++left; break;
            case IntervalOutcome::right_miss: ++right; break;
        }
        length_sum += length;
    }
};

// Everything one sample contributes, stored per sample so the final
// reduction can run in a fixed order independent of thread scheduling.
struct SampleOutcome {
    double d_star = 0.0;
    std::vector<IntervalEstimate> intervals;       // scheme-major, methods in config order
    std::vector<double> replicate_estimate_sums;   // per scheme
    std::vector<long long> replicate_counts;       // per scheme
    long long retries = 0;
};

bool needs_bootstrap(const std::vector<IntervalMethod>& methods) {
    return std::any_of(methods.begin(), methods.end(),
                       [](IntervalMethod m) { return m != IntervalMethod::normal; });
}

}  // namespace

CoverageReport run_study(const RatingMatrix& population, const StudyConfig& config) {
    if (config.samples < 1) {
        throw std::invalid_argument("run_study: need at least 1 sample");
    }
    if (config.replicates < 2 && needs_bootstrap(config.methods) && !config.schemes.empty()) {
        throw std::invalid_argument("run_study: bootstrap methods need at least 2 replicates");
    }
    const auto schemes = config.schemes;
    const auto& methods = config.methods;
    const auto n_schemes = schemes.size();
    const auto n_methods = methods.size();
    const double population_d = population_index(population);

    std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(config.samples));

    const auto process_sample = [&](int s) {
        SampleOutcome& out = outcomes[static_cast<std::size_t>(s)];
        const std::uint64_t sample_seed =
            rng::derive_seed(config.seed, static_cast<std::uint64_t>(s));

        auto draw_stream = rng::substream(sample_seed, kTagSampleDraw);
        const RatingMatrix sample =
            draw_two_stage_sample(population, config.n_targets, config.n_raters, draw_stream);
        const AgreementEstimate point = estimate_agreement(sample);
        out.d_star = point.d_hat_star;
        out.intervals.reserve(n_schemes * n_methods);
        out.replicate_estimate_sums.assign(n_schemes, 0.0);
        out.replicate_counts.assign(n_schemes, 0);

        const IntervalEstimate normal = normal_interval(point, config.level);
        for (std::size_t sc = 0; sc < n_schemes; ++sc) {
            BootstrapReplicates reps;
            if (needs_bootstrap(methods)) {
                reps = bootstrap_distribution(
                    sample, schemes[sc], config.replicates,
                    rng::derive_seed(sample_seed, kTagScheme, static_cast<std::uint64_t>(sc)));
                out.retries += reps.retries;
                for (const double est : reps.estimates) {
                    out.replicate_estimate_sums[sc] += est;
                }
                out.replicate_counts[sc] += static_cast<long long>(reps.size());
            }
            for (const IntervalMethod method : methods) {
                switch (method) {
                    case IntervalMethod::normal:
                        out.intervals.push_back(normal);
                        break;
                    case IntervalMethod::percentile:
                        out.intervals.push_back(percentile_interval(reps, config.level));
                        break;
                    case IntervalMethod::bootstrap_t:
                        out.intervals.push_back(bootstrap_t_interval(reps, point, config.level));
                        break;
                    case IntervalMethod::pivotal:
                        out.intervals.push_back(pivotal_interval(reps, point, config.level));
                        break;
                }
            }
        }
    };

    int workers = config.workers > 0 ? config.workers
                                     : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, config.samples));
    if (workers == 1) {
        for (int s = 0; s < config.samples; ++s) process_sample(s);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const int s = next.fetch_add(1);
                    if (s >= config.samples) return;
                    try {
                        process_sample(s);
                    } catch (...) {
                        const std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Fixed-order reduction: totals are independent of scheduling.
    CoverageReport report;
    report.population_d = population_d;
    report.samples = config.samples;
    report.replicates = config.replicates;
    report.n_targets = config.n_targets;
    report.n_raters = config.n_raters;
    report.levels = population.levels();
    report.level = config.level;
    report.seed = config.seed;

    std::vector<CellTally> tallies(n_schemes * n_methods);
    std::vector<double> bias_sums(n_schemes, 0.0);
    std::vector<long long> bias_counts(n_schemes, 0);
    if (config.keep_raw) report.raw_estimates.reserve(outcomes.size());
    for (const SampleOutcome& out : outcomes) {
        if (config.keep_raw) report.raw_estimates.push_back(out.d_star);
        report.bootstrap_retries += out.retries;
        for (std::size_t idx = 0; idx < out.intervals.size(); ++idx) {
            const IntervalEstimate& interval = out.intervals[idx];
            tallies[idx].add(score_interval(interval, population_d),
                             interval.upper - interval.lower);
        }
        for (std::size_t sc = 0; sc < n_schemes; ++sc) {
            bias_sums[sc] += out.replicate_estimate_sums[sc];
            bias_counts[sc] += out.replicate_counts[sc];
        }
    }

    const auto total = static_cast<double>(config.samples);
    for (std::size_t sc = 0; sc < n_schemes; ++sc) {
        for (std::size_t m = 0; m < n_methods; ++m) {
            const CellTally& tally = tallies[sc * n_methods + m];
            CoverageCell cell;
            cell.scheme = schemes[sc].kind;
            cell.method = methods[m];
            cell.ecp = 100.0 * static_cast<double>(tally.covered) / total;
            cell.le = 100.0 * static_cast<double>(tally.left) / total;
            cell.re = 100.0 * static_cast<double>(tally.right) / total;
            cell.avg_length = tally.length_sum / total;
            report.cells.push_back(cell);
        }
        SchemeBias bias;
        bias.scheme = schemes[sc].kind;
        bias.mean_replicate_estimate =
            bias_counts[sc] > 0 ? bias_sums[sc] / static_cast<double>(bias_counts[sc]) : 0.0;
        report.bias.push_back(bias);
    }
    return report;
}

}  // namespace ordagree
