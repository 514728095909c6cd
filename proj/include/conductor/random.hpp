#pragma once

#include <cstdint>
#include <random>

namespace conductor {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-match seed: splitmix64 chained over (base, t, repetition). Fixed so
// that published sweep rows stay reproducible.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t t, std::uint64_t repetition) {
    return splitmix64(splitmix64(splitmix64(base) ^ t) ^ repetition);
}

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation so streams match across toolchains.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r < limit) return r % bound;
    }
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace conductor
