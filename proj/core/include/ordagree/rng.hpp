#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ordagree::rng {

// splitmix64 finalizer; the backbone of seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a child seed from a parent seed and one or more stream indices.
/// Used to give each Monte Carlo sample / bootstrap replicate its own
/// stream so results do not depend on scheduling or worker count.
inline std::uint64_t derive_seed(std::uint64_t seed) {
    return splitmix64(seed);
}
template <typename... Ids>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t id, Ids... rest) {
    return derive_seed(splitmix64(seed ^ splitmix64(id)), rest...);
}

/// A seeded random stream with explicit, implementation-independent
/// uniform helpers (std::uniform_*_distribution is not pinned by the
/// standard; these are, given the mt19937_64 sequence).
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Unbiased (rejection on the top sliver).
    std::uint64_t below(std::uint64_t n) {
        // Lemire's multiply-shift bounded generation.
        std::uint64_t x = engine_();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = engine_();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

template <typename... Ids>
Stream substream(std::uint64_t seed, Ids... ids) {
    return Stream(derive_seed(seed, static_cast<std::uint64_t>(ids)...));
}

/// Simple random sample without replacement of `n` indices from [0, N).
/// Partial Fisher-Yates: the result order is the draw order, so n == N
/// yields a uniform permutation.
inline std::vector<int> sample_without_replacement(int population, int n, Stream& stream) {
    std::vector<int> pool(static_cast<std::size_t>(population));
    for (int i = 0; i < population; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < n; ++i) {
        const auto j = i + static_cast<int>(stream.below(static_cast<std::uint64_t>(population - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(n));
    return pool;
}

/// n i.i.d. indices from [0, N), with replacement.
inline std::vector<int> sample_with_replacement(int population, int n, Stream& stream) {
    std::vector<int> out(static_cast<std::size_t>(n));
    for (auto& v : out) v = static_cast<int>(stream.below(static_cast<std::uint64_t>(population)));
    return out;
}

/// Draws ordinal levels 1..K from a fixed category distribution by
/// inverse-CDF lookup. K is small, so a linear scan wins.
class CategoricalSampler {
public:
    explicit CategoricalSampler(std::span<const double> cumulative)
        : cumulative_(cumulative.begin(), cumulative.end()) {}

    int draw(Stream& stream) const {
        const double u = stream.uniform01();
        const int levels = static_cast<int>(cumulative_.size());
        for (int k = 0; k < levels - 1; ++k) {
            if (u < cumulative_[static_cast<std::size_t>(k)]) return k + 1;
        }
        return levels;
    }

private:
    std::vector<double> cumulative_;
};

}  // namespace ordagree::rng
