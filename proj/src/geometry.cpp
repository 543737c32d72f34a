#include "cellscatter/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cellscatter {

double canonical_angle(double theta)
{
    double t = std::fmod(theta, two_pi);
    if (t < 0.0)
        t += two_pi;
    // fmod of a slightly-negative angle can round back up to 2*pi
    if (t >= two_pi)
        t = 0.0;
    return t;
}

PlanarPoint to_planar(const PolarPoint& p)
{
    return {p.r * std::cos(p.theta), p.r * std::sin(p.theta)};
}

SectorAnnulus::SectorAnnulus(double inner_radius, double outer_radius,
                             double angle_lo, double angle_hi)
    : l1_(inner_radius), l2_(outer_radius), a1_(angle_lo), a2_(angle_hi)
{
    if (!(std::isfinite(l1_) && std::isfinite(l2_) &&
          std::isfinite(a1_) && std::isfinite(a2_)))
        throw std::invalid_argument("SectorAnnulus: bounds must be finite");
    if (!(l1_ >= 0.0 && l1_ < l2_))
        throw std::invalid_argument(
            "SectorAnnulus: radii must satisfy 0 <= inner < outer (got inner=" +
            std::to_string(l1_) + ", outer=" + std::to_string(l2_) + ")");
    if (!(a1_ >= 0.0 && a1_ < a2_ && a2_ <= two_pi))
        throw std::invalid_argument(
            "SectorAnnulus: angles must satisfy 0 <= lo < hi <= 2*pi (got lo=" +
            std::to_string(a1_) + ", hi=" + std::to_string(a2_) + ")");
}

double SectorAnnulus::area() const
{
    return 0.5 * (l2_ * l2_ - l1_ * l1_) * (a2_ - a1_);
}

bool SectorAnnulus::contains(const PolarPoint& p) const
{
    if (!(std::isfinite(p.r) && std::isfinite(p.theta)))
        return false;
    if (p.r < l1_ || p.r > l2_)
        return false;
    const double t = canonical_angle(p.theta);
    if (t >= a1_ && t <= a2_)
        return true;
    // 2*pi and 0 are the same ray
    return t == 0.0 && a2_ == two_pi;
}

double SectorAnnulus::joint_pdf(const PolarPoint& p) const
{
    if (!contains(p))
        return 0.0;
    return 2.0 * p.r / ((l2_ * l2_ - l1_ * l1_) * (a2_ - a1_));
}

double SectorAnnulus::radial_cdf(double r) const
{
    if (r <= l1_)
        return 0.0;
    if (r >= l2_)
        return 1.0;
    return (r * r - l1_ * l1_) / (l2_ * l2_ - l1_ * l1_);
}

double SectorAnnulus::radial_pdf(double r) const
{
    if (r < l1_ || r > l2_)
        return 0.0;
    return 2.0 * r / (l2_ * l2_ - l1_ * l1_);
}

} // namespace cellscatter
