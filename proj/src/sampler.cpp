#include "cellscatter/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cellscatter {

namespace {

void require_unit_interval(double u, const char* what)
{
    if (!(u >= 0.0 && u <= 1.0))
        throw std::invalid_argument(std::string(what) +
                                    ": u must be in [0, 1]");
}

} // namespace

double inverse_radius(const SectorAnnulus& region, double u)
{
    require_unit_interval(u, "inverse_radius");
    const double l1 = region.inner_radius();
    const double l2 = region.outer_radius();
    const double r = std::sqrt(u * (l2 * l2 - l1 * l1) + l1 * l1);
    return std::clamp(r, l1, l2);
}

double inverse_angle(const SectorAnnulus& region, double u)
{
    require_unit_interval(u, "inverse_angle");
    const double a1 = region.angle_lo();
    const double a2 = region.angle_hi();
    return std::clamp(u * (a2 - a1) + a1, a1, a2);
}

PolarPoint sample_node(const SectorAnnulus& region, RandomStream& stream)
{
    const double u1 = stream.next_uniform();
    const double u2 = stream.next_uniform();
    return {inverse_radius(region, u1), inverse_angle(region, u2)};
}

SampleBatch sample_batch(const SectorAnnulus& region, std::size_t n,
                         RandomStream& stream)
{
    SampleBatch batch{region, {}, {}, stream.seed()};
    batch.points.reserve(n);
    batch.polar.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PolarPoint p = sample_node(region, stream);
        batch.polar.push_back(p);
        batch.points.push_back(to_planar(p));
    }
    return batch;
}

} // namespace cellscatter
