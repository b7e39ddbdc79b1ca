#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace perm {

// Counter-based random stream: every draw is a pure function of
// (seed, trial, entry, draw). Trials and entries can be generated in any
// order, on any number of threads, with bit-identical results.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t trial,
                                  std::uint64_t entry, std::uint64_t draw) {
    std::uint64_t h = splitmix64(seed ^ 0x6A09E667F3BCC909ULL);
    h = splitmix64(h ^ trial * 0xBB67AE8584CAA73BULL);
    h = splitmix64(h ^ entry * 0x3C6EF372FE94F82BULL);
    h = splitmix64(h ^ draw * 0xA54FF53A5F1D36F1ULL);
    return h;
}

// Uniform in (0, 1]; never returns 0 so it is safe under log().
inline double uniform_unit(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1p-53;
}

// Standard complex normal with E|z|^2 = 1 (real and imaginary parts each
// N(0, 1/2)), via Box-Muller on two counter draws.
inline std::complex<double> standard_complex_normal(std::uint64_t seed, std::uint64_t trial,
                                                    std::uint64_t entry) {
    const double u1 = uniform_unit(counter_hash(seed, trial, entry, 0));
    const double u2 = uniform_unit(counter_hash(seed, trial, entry, 1));
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    // Box-Muller yields two N(0,1); scaling by 1/sqrt(2) gives total variance 1.
    const double scale = radius / std::numbers::sqrt2;
    return {scale * std::cos(angle), scale * std::sin(angle)};
}

inline bool fair_coin(std::uint64_t seed, std::uint64_t trial, std::uint64_t entry) {
    return (counter_hash(seed, trial, entry, 0) >> 63) != 0;
}

}  // namespace rng
}  // namespace perm
