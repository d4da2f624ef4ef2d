#pragma once

// Counter-based random number generation.
//
// Streams are keyed by (seed, stream id): the n-th draw of a stream is a pure
// function of (seed, stream, n), so Monte Carlo replicates can be generated
// independently, in any order, and in parallel, with byte-identical results.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dsim {

// splitmix64 finalizer; the standard constants.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Derives an independent seed for replicate `rep` of a base seed.
inline std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t rep) {
    return mix64(seed + 0x9E3779B97F4A7C15ULL * (rep + 1));
}

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix64(seed ^ mix64(stream + 0x6A09E667F3BCC909ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform on (0, 1]; never returns 0, so it is safe under log().
    double next_unit() {
        return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second draw of each pair is cached.
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_unit();
        const double u2 = 1.0 - next_unit(); // [0, 1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace dsim
