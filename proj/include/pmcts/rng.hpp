#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pmcts {

// All stochastic components draw through these helpers instead of the
// std:: distributions, whose output is implementation-defined. Experiments
// rerun with the same seed must produce identical streams everywhere.

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed) {
    return Rng(splitmix64(seed));
}

// Independent stream derived from (seed, stream); used to give trials and
// replans their own generators.
inline Rng fork_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ull)));
}

// Uniform index in [0, n). Modulo bias is below 2^-57 for n <= 64.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

// Uniform double in [0, 1).
inline double uniform_real01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_real01(rng);
}

// Box-Muller without caching: every call consumes exactly two draws.
inline double normal(Rng& rng, double mean, double stddev) {
    double u1 = uniform_real01(rng);
    double u2 = uniform_real01(rng);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * M_PI * u2);
}

} // namespace pmcts
