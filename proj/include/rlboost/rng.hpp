#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace rlboost {

/// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of sub-stream `index` below `base`. Deterministic and platform independent.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return mix64(mix64(base) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/**
 * Seeded random source.
 *
 * Wraps a 64-bit Mersenne twister and draws doubles from the top 53 bits so
 * that sequences are bit-identical across standard library implementations
 * (std::uniform_real_distribution is not).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::size_t uniform_index(std::size_t n);

    /// Draws an index from a (possibly unnormalized) nonnegative weight vector.
    std::size_t categorical(std::span<const double> weights);

    /// Independent generator for sub-stream `index`; does not advance this one.
    [[nodiscard]] Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

    /// Fresh generator seeded from this stream's next output.
    [[nodiscard]] Rng fork() { return Rng(mix64(engine_())); }

    std::uint64_t seed() const { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace rlboost
