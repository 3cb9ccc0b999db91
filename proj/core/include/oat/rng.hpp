#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace oat {

// The standard distributions are implementation-defined, so anything whose
// output must be reproducible across toolchains draws through these helpers
// instead. mt19937_64 itself is fully specified by the standard.

// Uniform integer in [0, n) by rejection sampling.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller.
inline double standard_normal(std::mt19937_64& rng) {
    double u1;
    do {
        u1 = uniform_unit(rng);
    } while (u1 == 0.0);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

} // namespace oat
