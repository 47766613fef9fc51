#pragma once

#include <cstdint>
#include <random>

#include "bjdm/hash.hpp"

namespace bjdm {

/// Seedable pseudorandom stream. Wraps mt19937_64 and implements the few
/// draws the samplers need without std distributions, so a seed replays to
/// the same trajectory on every standard library.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        // Lemire's nearly-divisionless bounded draw.
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Two distinct indices uniformly among ordered pairs of [0, n), n >= 2.
    std::pair<std::uint64_t, std::uint64_t> distinct_pair(std::uint64_t n) {
        const std::uint64_t i = uniform_index(n);
        std::uint64_t j = uniform_index(n - 1);
        if (j >= i) ++j;
        return {i, j};
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Seed of chain `index` in a batch started from `seed`:
/// mix64(mix64(seed) ^ mix64(index + 1)). Stable across releases so that
/// published runs can be replayed chain by chain.
inline std::uint64_t derive_chain_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + 1));
}

}  // namespace bjdm
