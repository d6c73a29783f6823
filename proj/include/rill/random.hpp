// random.hpp: deterministic random source and Poisson sampling.
//
// All randomness in the library flows through RandomSource so that a run is
// reproducible bit-for-bit from its seed on any platform. std::mt19937_64 is
// specified exactly by the standard; the double conversion below avoids the
// implementation-defined std::uniform_real_distribution.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "rill/errors.hpp"

namespace rill {

/// Mixes a master seed with a stream index. Used for seed splitting: member i
/// of an ensemble draws from mix_seed(master, i), so adding members never
/// perturbs the streams of existing ones.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer applied to the combined word
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, bound); bound must be positive.
    std::size_t next_index(std::size_t bound) {
        return static_cast<std::size_t>(next_double() * static_cast<double>(bound));
    }

private:
    std::mt19937_64 engine_;
};

/// Draws k ~ Poisson(lambda) by inversion with sequential search.
inline int poisson_sample(double lambda, RandomSource& rng) {
    if (!(lambda > 0.0)) {
        throw DomainError("poisson_sample: lambda must be positive");
    }
    double p = std::exp(-lambda);
    double cdf = p;
    const double u = rng.next_double();
    int k = 0;
    // the cap only guards against cdf saturating just below u in floating point
    while (u > cdf && k < 1000) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

} // namespace rill
