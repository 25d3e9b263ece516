#pragma once

#include <cmath>
#include <cstdint>

namespace streambench {

// SplitMix64 generator. Self-contained so that streams, shuffles and
// classifier randomness are bit-reproducible across platforms and compilers
// (the standard <random> distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_int(std::uint64_t n) {
        // multiply-shift; bias is negligible for n << 2^64
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller (no cached spare, two uniforms per draw).
    double gaussian() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    // Exponential with the given rate. rate must be > 0.
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
    std::uint64_t state_;
};

// Counter-based seed derivation: mixing the same (seed, stream) pair always
// yields the same child seed, so repetitions can be reordered or run in
// parallel without changing any one repetition's randomness.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace streambench
