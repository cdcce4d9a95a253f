#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mmlink {

// splitmix64 output function. Used to derive independent substream seeds: mixing any
// distinct (seed, tag, index...) tuple through it gives uncorrelated 64-bit values.
inline std::uint64_t splitmix64_step(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Folds parts into a substream seed one at a time: mix(mix(seed, tag), index), ...
inline std::uint64_t mix(std::uint64_t state, std::uint64_t part) {
    return splitmix64_step(state ^ part);
}

template <typename... Rest>
inline std::uint64_t mix(std::uint64_t state, std::uint64_t part, Rest... rest) {
    return mix(mix(state, part), static_cast<std::uint64_t>(rest)...);
}

// Purpose tags for substreams, so draws for different quantities never alias even when
// their indices collide.
enum StreamTag : std::uint64_t {
    kTagPilotChannel = 0x11,
    kTagInnovation = 0x12,
    kTagSymbols = 0x13,
    kTagNoise = 0x14,
    kTagPilotNoise = 0x15,
    kTagIciSamples = 0x16,
    kTagUeState = 0x17,
    kTagPowerCoeff = 0x18,
};

// Deterministic random stream. Wraps mt19937_64 seeded from a mixed substream key; all
// distributions are hand-rolled on top of raw 64-bit draws so results are identical
// across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t substream_seed) : eng_(substream_seed) {}

    // Uniform on (0, 1): 53-bit mantissa, offset by half an ulp so 0 never occurs.
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    }

    // Circularly symmetric complex normal with E|z|^2 = var, via Box-Muller.
    std::complex<double> complex_normal(double var) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-var * std::log(u1));
        const double phi = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // Unit-modulus symbol with uniform phase.
    std::complex<double> unit_phase() {
        const double phi = 2.0 * 3.14159265358979323846 * uniform();
        return {std::cos(phi), std::sin(phi)};
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace mmlink
