#pragma once

#include <cstdint>

namespace cubiclocus {

// Counter-based deterministic RNG: every draw is a pure function of
// (seed, stream, counter), so parallel substreams are reproducible
// independently of scheduling.
struct CounterRng {
    std::uint64_t key;
    std::uint64_t counter = 0;

    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z += kGolden;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key(mix(seed ^ mix(stream))) {}

    std::uint64_t next() { return mix(key + (counter++) * kGolden); }

    // Unbiased uniform draw in [0, m) by rejection.
    std::uint64_t below(std::uint64_t m) {
        const std::uint64_t lim = m ? (~0ULL - (~0ULL % m)) : 0;
        for (;;) {
            std::uint64_t v = next();
            if (v < lim) return v % m;
        }
    }

    // Uniform in [-h, h].
    long box(long h) { return static_cast<long>(below(2 * h + 1)) - h; }
};

}  // namespace cubiclocus
