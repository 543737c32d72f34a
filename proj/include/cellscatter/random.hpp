#pragma once

#include <cstdint>
#include <random>

namespace cellscatter {

/// Seeded source of U(0,1) variates and zero-mean normals.
///
/// The same seed always yields the same sequence, independent of platform:
/// uniforms take the top 53 bits of a std::mt19937_64 draw (the engine's
/// output sequence is fixed by the standard) and normals come from an
/// explicit Box-Muller transform rather than the implementation-defined
/// std::normal_distribution.
///
/// Substream rule for parallel work: substream k is an independent stream
/// seeded with seed() XOR mix64(k), where mix64 is the splitmix64 finalizer.
/// Tasks that each own a substream produce merge-order-deterministic results.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    /// Next uniform variate in [0, 1), 53-bit resolution.
    double next_uniform();

    /// Next normal variate with mean 0 and standard deviation sigma.
    /// Always consumes exactly two uniforms (Box-Muller, spare discarded).
    double next_normal(double sigma);

    /// The seed this stream was constructed with (not the current state).
    std::uint64_t seed() const { return seed_; }

    /// Independent stream for parallel task k, derived from seed().
    RandomStream substream(std::uint64_t k) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive substream seeds.
std::uint64_t mix64(std::uint64_t z);

} // namespace cellscatter
