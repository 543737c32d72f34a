#pragma once

#include <numbers>

namespace cellscatter {

inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

/// Node position in polar coordinates (radius, angle in radians).
struct PolarPoint {
    double r = 0.0;
    double theta = 0.0;
};

/// Node position in Cartesian coordinates.
struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Maps an arbitrary finite angle into [0, 2*pi).
double canonical_angle(double theta);

PlanarPoint to_planar(const PolarPoint& p);

/// A circular-sector layer: the region bounded by radii [l1, l2] and
/// angles [a1, a2]. Uniform spreading over this region is the base
/// distribution everything else builds on.
///
/// Invariants enforced at construction: 0 <= l1 < l2 (strict, so the
/// area is positive) and 0 <= a1 < a2 <= 2*pi. Angles are stored as
/// given; query angles are canonicalized, so a2 = 2*pi stays representable.
/// Immutable after construction.
class SectorAnnulus {
public:
    SectorAnnulus(double inner_radius, double outer_radius,
                  double angle_lo, double angle_hi);

    double inner_radius() const { return l1_; }
    double outer_radius() const { return l2_; }
    double angle_lo() const { return a1_; }
    double angle_hi() const { return a2_; }

    double area() const;

    /// Membership test, boundary-inclusive on all four bounds. The query
    /// angle is canonicalized into [0, 2*pi); canonical 0 also matches
    /// an upper bound of exactly 2*pi (the two describe the same ray).
    bool contains(const PolarPoint& p) const;

    /// Joint density of (R, Theta) under uniform spreading:
    /// 2r / ((l2^2 - l1^2)(a2 - a1)) inside the region, 0 outside.
    double joint_pdf(const PolarPoint& p) const;

    /// Distribution function of the radius: 0 below l1,
    /// (r^2 - l1^2)/(l2^2 - l1^2) on [l1, l2], 1 above l2.
    double radial_cdf(double r) const;

    /// Density of the radius: 2r/(l2^2 - l1^2) on [l1, l2], 0 elsewhere.
    double radial_pdf(double r) const;

    friend bool operator==(const SectorAnnulus&, const SectorAnnulus&) = default;

private:
    double l1_, l2_, a1_, a2_;
};

} // namespace cellscatter
