/// @file rng.hpp
/// @brief Seedable random number generation with variates derived explicitly
///        from the 64-bit engine, so streams replay identically across
///        platforms and standard-library versions.

#ifndef SID_SOLVERS_RNG_HPP
#define SID_SOLVERS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace sid {

/// mt19937_64 is fully specified by the standard; the distributions are not,
/// so uniform and normal variates are computed here by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Box-Muller; the paired variate is cached.
    double normal(double mean, double stddev) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return mean + stddev * radius * std::cos(angle);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Decorrelated seed for stream `stream` of a base seed. Used to hand each
/// repetition (and each generated vector) its own reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(base ^ mix64(stream + 1));
}

} // namespace sid

#endif // SID_SOLVERS_RNG_HPP
