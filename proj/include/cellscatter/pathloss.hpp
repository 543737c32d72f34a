#pragma once

#include "cellscatter/geometry.hpp"
#include "cellscatter/random.hpp"
#include "cellscatter/stats.hpp"

#include <cstddef>
#include <vector>

namespace cellscatter {

/// Log-distance path-loss model with lognormal shadowing:
///
///     Lp = alpha + beta * log10(r / r0) + Psi,   Psi ~ N(0, sigma_psi^2)
///
/// for a node at distance r from the base station, r drawn from the radial
/// density of a SectorAnnulus with radii [region_l1, region_l2]. All dB-scale
/// quantities; sigma_psi_db is the shadowing *standard deviation* in dB.
struct PathLossParams {
    double region_l1 = 0.0;   // inner radius of the node region (m)
    double region_l2 = 0.0;   // outer radius of the node region (m)
    double r0 = 1.0;          // close-in reference distance (m), > 0
    double alpha_db = 0.0;    // intercept (dB)
    double beta_db = 0.0;     // distance-decay slope (dB/decade), > 0
    double sigma_psi_db = 0.0; // shadowing std dev (dB), >= 0

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    /// Path loss at the region bounds: w_i = alpha + beta*log10(l_i/r0).
    /// w1() is -infinity when region_l1 == 0.
    double w1() const;
    double w2() const;
};

/// One random path-loss value (dB) for a node at distance r > 0. Always
/// consumes one normal draw (two uniforms) from the stream, even when
/// sigma_psi_db == 0.
double sample_pathloss(const PathLossParams& params, double r,
                       RandomStream& stream);

/// Gaussian tail probability Q(x) = erfc(x / sqrt(2)) / 2.
double q_function(double x);

/// Closed-form density of the path loss at l (dB), obtained by carrying the
/// Gaussian convolution over the transformed radial density analytically:
///
///   f(l) = 2 r0^2 ln10 / (beta (L2^2 - L1^2))
///          * 10^( 2 (ln10 sigma^2 + beta (l - alpha)) / beta^2 )
///          * [ Q((Omega - beta log10 r) / sigma) ] evaluated at r = L2
///                                                  minus the value at r = L1
///   with Omega = l - alpha + beta log10(r0) + 2 ln10 sigma^2 / beta.
///
/// The bracket term at r = L1 is 0 when L1 = 0 (Q(+inf)). Requires
/// sigma_psi_db > 0; for the no-shadowing case use pl_pdf_no_shadowing.
/// Throws std::logic_error if the bracket evaluates below -1e-12 (would
/// indicate a broken implementation); values in [-1e-12, 0) clamp to 0.
double pl_pdf_closed_form(const PathLossParams& params, double l);

/// Independent numerical evaluation of the same density, used as the
/// verification oracle: quadrature of the convolution integral
///
///   f(l) = int over tau in [l - w2, l - w1] of
///          N(0, sigma^2)(tau) * [ln10 * r * f_R(r) / beta]
///          at r = r0 * 10^((l - tau - alpha) / beta)
///
/// by adaptive Simpson with absolute tolerance 1e-10. The infinite upper
/// limit when L1 = 0 is truncated where the Gaussian factor vanishes
/// (|tau| <= 12 sigma). Requires sigma_psi_db > 0. Quadrature
/// non-convergence surfaces as std::runtime_error.
double pl_pdf_numeric(const PathLossParams& params, double l);

/// Density of the path loss without shadowing: the pure change-of-variables
/// transform of the radial density, supported on [w1, w2]:
/// 2 ln10 r^2 / (beta (L2^2 - L1^2)) at r = r0 * 10^((l - alpha) / beta).
double pl_pdf_no_shadowing(const PathLossParams& params, double l);

/// Density-normalized histogram of n simulated path-loss values for nodes
/// placed uniformly in region. The region's radii must equal the params'
/// radii. Requires n >= 1 and bins >= 1.
std::vector<HistogramBin> pl_histogram(const PathLossParams& params,
                                       const SectorAnnulus& region,
                                       std::size_t n, std::size_t bins,
                                       RandomStream& stream);

} // namespace cellscatter
