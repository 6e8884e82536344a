#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lfs {

// Seed mixing for derived streams (per task, per game, per run). Keeps every
// random draw in the project a pure function of the top-level config seed.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0) {
    return splitmix64(splitmix64(seed ^ (a * 0x9e3779b97f4a7c15ULL)) ^ b);
}

// Uniform draw in [0, n) without std::uniform_int_distribution, whose output
// is implementation-defined. Modulo bias is negligible for our n << 2^64.
inline uint64_t rng_below(std::mt19937_64& rng, uint64_t n) {
    return rng() % n;
}

inline int rng_range(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng_below(rng, static_cast<uint64_t>(hi - lo + 1)));
}

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace lfs
