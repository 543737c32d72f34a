#pragma once

#include "cellscatter/geometry.hpp"
#include "cellscatter/random.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cellscatter {

/// Exact (rejection-free) uniform node placement in a SectorAnnulus.
/// The radius comes from inverting the radial CDF, the angle from an affine
/// map; both consume one U(0,1) draw, radius first.

/// Inverse of the radial CDF: sqrt(u*(l2^2 - l1^2) + l1^2).
/// Requires u in [0, 1]; the result is clamped into [l1, l2] (rounding of
/// the closed-form expression can land one ulp outside).
double inverse_radius(const SectorAnnulus& region, double u);

/// Affine angle map u*(a2 - a1) + a1, clamped into [a1, a2].
/// Requires u in [0, 1].
double inverse_angle(const SectorAnnulus& region, double u);

/// One uniform point in the region. Draws two consecutive variates from the
/// stream: first the radius, then the angle.
PolarPoint sample_node(const SectorAnnulus& region, RandomStream& stream);

/// A tagged collection of generated node positions. polar[i] and points[i]
/// describe the same node; every polar point lies in region.
struct SampleBatch {
    SectorAnnulus region;
    std::vector<PlanarPoint> points;
    std::vector<PolarPoint> polar;
    std::uint64_t seed = 0; // seed of the stream that produced the batch
};

/// Exactly n uniform points, in generation order. n = 0 gives an empty batch.
SampleBatch sample_batch(const SectorAnnulus& region, std::size_t n,
                         RandomStream& stream);

} // namespace cellscatter
