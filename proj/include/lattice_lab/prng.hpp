#pragma once

#include <cstdint>

namespace lattice_lab {

/// SplitMix64 generator. The whole stream is a function of the seed, so every
/// generated lattice and LWE instance is reproducible across platforms.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound). Uses rejection so the result is unbiased.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept
    {
        if (bound == 0)
            return next();
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
        std::uint64_t v = next();
        while (v >= limit)
            v = next();
        return v % bound;
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

} // namespace lattice_lab
