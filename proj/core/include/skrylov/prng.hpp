#pragma once

#include <cstdint>

#include "skrylov/vec.hpp"

namespace skrylov {

/// splitmix64: the 64-bit mixer of Steele, Lea and Flood. Chosen for the
/// reproducible right-hand sides because the full sequence is pinned by the
/// seed alone and is trivial to re-implement in any language.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }
};

/// Vector with entries uniform in [-1, 1), fully determined by the seed.
inline Vector random_vector(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Vector v(n);
    for (double& x : v) x = rng.next_symmetric();
    return v;
}

}  // namespace skrylov
