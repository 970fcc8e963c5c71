#pragma once

#include <cstdint>
#include <random>

namespace forage {

using Rng = std::mt19937_64;

// splitmix64; used to derive independent, well-mixed seeds from a base
// seed plus stream tags so that per-clan / per-generation streams stay
// reproducible no matter how the work is scheduled.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x517cc1b727220a95ULL;
    h ^= splitmix64(s);
    s ^= b + 0x2545f4914f6cdd1dULL;
    h ^= splitmix64(s);
    s ^= c + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    return h;
}

// Uniform double in [0,1). Hand-rolled instead of
// std::uniform_real_distribution so the draw sequence does not depend
// on the standard library implementation.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi], both inclusive. Rejection sampling keeps
// the distribution exact and the sequence portable.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(rng());  // full 64-bit range
    const std::uint64_t reject_below = (0 - span) % span;    // 2^64 mod span
    std::uint64_t v;
    do {
        v = rng();
    } while (v < reject_below);
    return lo + static_cast<std::int64_t>(v % span);
}

}  // namespace forage
