#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace cera {

// SplitMix64 finalizer. Used to derive independent sub-seeds from a master
// seed; the derivation is stable across platforms and releases so that a
// (seed, parameters) pair always reproduces the same random streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t p : parts) h = splitmix64(h ^ p);
    return h;
}

// Unbiased uniform draw from {0, ..., bound-1} via bitmask rejection.
// Not std::uniform_int_distribution: its output is implementation-defined,
// and seeded runs must be reproducible independent of the standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t mask = std::bit_ceil(bound) - 1;
    for (;;) {
        const std::uint64_t v = rng() & mask;
        if (v < bound) return v;
    }
}

}  // namespace cera
