#pragma once

#include <cstdint>

namespace jrc {

// All pseudorandom material in the toolkit derives from SplitMix64 so that
// transition tables, channel noise and experiment trials reproduce bit-for-bit
// across platforms. No std::random distributions are used anywhere.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// One word of the transition table: a pure function of (seed, phase, x).
inline constexpr std::uint64_t table_word(std::uint64_t seed, std::uint32_t phase, std::uint64_t x) {
    std::uint64_t z = mix64(seed + kGolden * (std::uint64_t{phase} + 1));
    return mix64(z + kGolden * (x + 1));
}

// Independent deterministic stream identified by (seed, stream id).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : state_(mix64(seed + kGolden) ^ mix64(stream + 2 * kGolden)) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform in [0, n) without modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace jrc
