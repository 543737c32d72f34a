#include "cellscatter/pathloss.hpp"

#include "cellscatter/sampler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cellscatter {

namespace {

constexpr double ln10 = std::numbers::ln10_v<double>;
constexpr double inf = std::numeric_limits<double>::infinity();

// Q(a) - Q(b) for a <= b without cancellation: when both arguments are
// predominantly negative, flip via Q(x) = 1 - Q(-x) so two small erfc
// values are subtracted instead of two values near 2.
double q_difference(double a, double b)
{
    constexpr double inv_sqrt2 = std::numbers::sqrt2_v<double> / 2.0;
    if (a + b >= 0.0)
        return 0.5 * (std::erfc(a * inv_sqrt2) - std::erfc(b * inv_sqrt2));
    return 0.5 * (std::erfc(-b * inv_sqrt2) - std::erfc(-a * inv_sqrt2));
}

} // namespace

void PathLossParams::validate() const
{
    if (!(std::isfinite(region_l1) && std::isfinite(region_l2) &&
          std::isfinite(r0) && std::isfinite(alpha_db) &&
          std::isfinite(beta_db) && std::isfinite(sigma_psi_db)))
        throw std::invalid_argument("PathLossParams: fields must be finite");
    if (!(r0 > 0.0))
        throw std::invalid_argument("PathLossParams: r0 must be > 0");
    if (!(region_l1 >= 0.0 && region_l1 < region_l2))
        throw std::invalid_argument(
            "PathLossParams: radii must satisfy 0 <= region_l1 < region_l2");
    if (!(beta_db > 0.0))
        throw std::invalid_argument("PathLossParams: beta_db must be > 0");
    if (!(sigma_psi_db >= 0.0))
        throw std::invalid_argument("PathLossParams: sigma_psi_db must be >= 0");
}

double PathLossParams::w1() const
{
    if (region_l1 == 0.0)
        return -inf;
    return alpha_db + beta_db * std::log10(region_l1 / r0);
}

double PathLossParams::w2() const
{
    return alpha_db + beta_db * std::log10(region_l2 / r0);
}

double sample_pathloss(const PathLossParams& params, double r,
                       RandomStream& stream)
{
    params.validate();
    if (!(r > 0.0))
        throw std::invalid_argument("sample_pathloss: r must be > 0");
    return params.alpha_db + params.beta_db * std::log10(r / params.r0) +
           stream.next_normal(params.sigma_psi_db);
}

double q_function(double x)
{
    return 0.5 * std::erfc(x * (std::numbers::sqrt2_v<double> / 2.0));
}

double pl_pdf_closed_form(const PathLossParams& params, double l)
{
    params.validate();
    if (!(params.sigma_psi_db > 0.0))
        throw std::invalid_argument(
            "pl_pdf_closed_form: requires sigma_psi_db > 0 "
            "(use pl_pdf_no_shadowing for the sigma = 0 case)");
    const double beta = params.beta_db;
    const double sigma = params.sigma_psi_db;
    const double l1 = params.region_l1;
    const double l2 = params.region_l2;
    const double k = 2.0 * ln10 / beta;

    // Q-argument at radius L_i is (l - w_i)/sigma + sigma*k; L1 = 0 makes
    // it +inf, killing that bracket term.
    const double x2 = (l - params.w2()) / sigma + sigma * k;
    const double x1 = l1 > 0.0 ? (l - params.w1()) / sigma + sigma * k : inf;
    const double bracket = q_difference(x2, x1);
    if (bracket < -1e-12)
        throw std::logic_error(
            "pl_pdf_closed_form: Q-bracket evaluated negative; "
            "the L1->L2 orientation is broken");
    if (bracket <= 0.0)
        return 0.0;

    // Assembled in log space so a huge exponential times a tiny bracket
    // never produces inf * 0.
    const double ln_prefactor =
        std::log(2.0 * params.r0 * params.r0 * ln10 / (beta * (l2 * l2 - l1 * l1)));
    const double ln_exponential =
        k * (l - params.alpha_db) + 0.5 * sigma * sigma * k * k;
    return std::exp(ln_prefactor + ln_exponential + std::log(bracket));
}

double pl_pdf_numeric(const PathLossParams& params, double l)
{
    params.validate();
    if (!(params.sigma_psi_db > 0.0))
        throw std::invalid_argument(
            "pl_pdf_numeric: requires sigma_psi_db > 0 "
            "(use pl_pdf_no_shadowing for the sigma = 0 case)");
    const double sigma = params.sigma_psi_db;
    const double beta = params.beta_db;
    const double delta_sq =
        params.region_l2 * params.region_l2 - params.region_l1 * params.region_l1;

    double t_lo = l - params.w2();
    double t_hi = params.region_l1 > 0.0 ? l - params.w1() : inf;
    t_lo = std::max(t_lo, -12.0 * sigma);
    t_hi = std::min(t_hi, 12.0 * sigma);
    if (!(t_lo < t_hi))
        return 0.0;

    const double gauss_norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi_v<double>));
    const auto integrand = [&](double tau) {
        const double r = params.r0 *
                         std::pow(10.0, (l - tau - params.alpha_db) / beta);
        const double transformed = 2.0 * ln10 * r * r / (beta * delta_sq);
        return gauss_norm * std::exp(-tau * tau / (2.0 * sigma * sigma)) *
               transformed;
    };

    // Seed the panel partition where the Gaussian factor changes scale.
    std::vector<double> partition{t_lo};
    for (double m : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double p = m * sigma;
        if (p > t_lo && p < t_hi)
            partition.push_back(p);
    }
    partition.push_back(t_hi);
    return integrate_partition(integrand, partition, 1e-10);
}

double pl_pdf_no_shadowing(const PathLossParams& params, double l)
{
    params.validate();
    if (l < params.w1() || l > params.w2())
        return 0.0;
    const double r =
        params.r0 * std::pow(10.0, (l - params.alpha_db) / params.beta_db);
    const double delta_sq =
        params.region_l2 * params.region_l2 - params.region_l1 * params.region_l1;
    return 2.0 * ln10 * r * r / (params.beta_db * delta_sq);
}

std::vector<HistogramBin> pl_histogram(const PathLossParams& params,
                                       const SectorAnnulus& region,
                                       std::size_t n, std::size_t bins,
                                       RandomStream& stream)
{
    params.validate();
    if (region.inner_radius() != params.region_l1 ||
        region.outer_radius() != params.region_l2)
        throw std::invalid_argument(
            "pl_histogram: region radii do not match params radii");
    if (n < 1)
        throw std::invalid_argument("pl_histogram: need n >= 1");
    if (bins < 1)
        throw std::invalid_argument("pl_histogram: need bins >= 1");

    std::vector<double> losses;
    losses.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PolarPoint node = sample_node(region, stream);
        losses.push_back(sample_pathloss(params, node.r, stream));
    }
    return density_histogram(losses, bins);
}

} // namespace cellscatter
