#include "cellscatter/random.hpp"

#include "cellscatter/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace cellscatter {

std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomStream::next_uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::next_normal(double sigma)
{
    if (!(sigma >= 0.0))
        throw std::invalid_argument("next_normal: sigma must be >= 0");
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    // 1 - u1 is in (0, 1], so the log is finite
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    return sigma * radius * std::cos(two_pi * u2);
}

RandomStream RandomStream::substream(std::uint64_t k) const
{
    return RandomStream(seed_ ^ mix64(k));
}

} // namespace cellscatter
