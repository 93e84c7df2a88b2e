#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace ruleinfer::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Unbiased integer in [0, n). The standard distributions are
/// implementation-defined, so draws go through this instead.
inline std::size_t draw(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit) return static_cast<std::size_t>(x % bound);
    }
}

/// True with probability p (resolution 2^-53).
inline bool chance(std::mt19937_64& rng, double p) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

}  // namespace ruleinfer::detail
