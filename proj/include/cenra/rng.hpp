#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

// Deterministic named RNG streams. Every consumer of randomness gets its own
// stream derived from (run seed, stream name, index), so adding a draw in one
// place never shifts the values seen elsewhere. Draw helpers are hand-rolled
// because std::*_distribution output is implementation-defined and we promise
// bit-identical runs for a fixed seed.

namespace cenra {

using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t stream_seed(uint64_t seed, std::string_view name, uint64_t index = 0) {
    uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ fnv1a(name));
    h = splitmix64(h ^ index);
    return h;
}

inline Rng make_stream(uint64_t seed, std::string_view name, uint64_t index = 0) {
    return Rng(stream_seed(seed, name, index));
}

// Uniform on [0, 1) with 53 bits of mantissa.
inline double uniform_real(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
inline uint64_t uniform_int(Rng& rng, uint64_t n) {
    if (n == 0) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

// Standard normal via Box-Muller; consumes exactly two draws per call.
inline double normal(Rng& rng) {
    double u1 = uniform_real(rng);
    double u2 = uniform_real(rng);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace cenra
