// Counter-based PRNG (splitmix64) with per-stream derivation from
// (seed, stream index). Deterministic across platforms.
#pragma once

#include <cstdint>

namespace gtc {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(mix(seed) + 0x9E3779B97F4A7C15ull * (stream + 1))) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        return mix(z);
    }

    // uniform in [0, 1) with 53-bit resolution
    double uniform() { return (double)(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // 128-bit multiply rejection-free mapping (bias < 2^-64, fine for MC)
        return (std::uint64_t)(((__uint128_t)next() * n) >> 64);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
};

}  // namespace gtc
