#pragma once

#include <cstdint>

namespace lagrangia {

// SplitMix64 with the reference constants; this exact sequence is part of the
// serialization contract for seeded Lagrangian sampling, so the constants must
// never change.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Contractual reduction: plain mod, not rejection sampling.
    uint64_t mod(uint64_t n) { return next() % n; }
};

} // namespace lagrangia
