#pragma once

#include <cstdint>

namespace rln {

// SplitMix64: deterministic and trivially portable across platforms and
// languages, which is all the experiment protocol needs.
struct SplitMix64 {
    std::uint64_t state = 0;

    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Top 53 bits, the mantissa width of a double.
    std::uint64_t next_bits53() { return next_u64() >> 11; }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_bits53()) * (1.0 / 9007199254740992.0);
    }

    // Uniform in [0, n); modulo bias is irrelevant at these ranges and the
    // rule stays portable.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }
};

}  // namespace rln
