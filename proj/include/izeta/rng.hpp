#pragma once

#include <cstdint>

namespace izeta {

// SplitMix64 finalizer. Bijective on uint64, good avalanche; used as the
// basis of all randomness in the library so that results are identical
// across platforms regardless of the standard library implementation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based stream: draw #index of the stream identified by seed.
// stream_draw(seed, i) = mix64(mix64(seed) ^ mix64(i + 1)), so distinct
// (seed, index) pairs decorrelate even for small seeds and indices.
inline std::uint64_t stream_draw(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed) ^ mix64(index + 1));
}

// Uniform double in [0, 1) from the top 53 bits of a draw.
inline double stream_uniform(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(stream_draw(seed, index) >> 11) * 0x1.0p-53;
}

// Derive a child seed, used for resampling and per-trial streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ mix64(salt + 0x5851f42d4c957f2dULL));
}

// Sequential counter RNG over a stream.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return stream_draw(seed_, counter_++); }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace izeta
