#include "cellscatter/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cellscatter {

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : values_(std::move(values))
{
    if (values_.empty())
        throw std::invalid_argument("EmpiricalCdf: empty sample");
    std::sort(values_.begin(), values_.end());
}

double EmpiricalCdf::operator()(double x) const
{
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) /
           static_cast<double>(values_.size());
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf)
{
    if (samples.empty())
        throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double fx = cdf(samples[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - fx;
        const double lo = fx - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

double ks_critical_value(std::size_t n, double alpha)
{
    if (n == 0)
        throw std::invalid_argument("ks_critical_value: n must be >= 1");
    double c;
    if (alpha == 0.10)
        c = 1.22;
    else if (alpha == 0.05)
        c = 1.36;
    else if (alpha == 0.01)
        c = 1.63;
    else
        throw std::invalid_argument(
            "ks_critical_value: supported alphas are 0.10, 0.05, 0.01");
    return c / std::sqrt(static_cast<double>(n));
}

GofReport ks_report(std::vector<double> samples,
                    const std::function<double(double)>& cdf, double alpha)
{
    GofReport rep;
    rep.test_name = "kolmogorov-smirnov";
    rep.n = samples.size();
    rep.alpha = alpha;
    rep.critical_value = ks_critical_value(rep.n, alpha);
    rep.statistic = ks_statistic(std::move(samples), cdf);
    rep.passed = rep.statistic < rep.critical_value;
    return rep;
}

GofReport chi_square_uniform(const std::vector<double>& samples,
                             double lo, double hi, std::size_t bins,
                             double alpha)
{
    if (samples.empty())
        throw std::invalid_argument("chi_square_uniform: empty sample");
    if (bins < 2)
        throw std::invalid_argument("chi_square_uniform: need bins >= 2");
    if (!(lo < hi))
        throw std::invalid_argument("chi_square_uniform: requires lo < hi");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("chi_square_uniform: alpha must be in (0,1)");
    const double expected =
        static_cast<double>(samples.size()) / static_cast<double>(bins);
    if (expected < 5.0)
        throw std::invalid_argument(
            "chi_square_uniform: expected count per bin must be >= 5");

    std::vector<std::size_t> counts(bins, 0);
    const double span = hi - lo;
    for (double x : samples) {
        if (!(x >= lo && x <= hi))
            throw std::invalid_argument(
                "chi_square_uniform: sample value outside [lo, hi]");
        auto idx = static_cast<std::size_t>((x - lo) / span *
                                            static_cast<double>(bins));
        if (idx >= bins)
            idx = bins - 1;
        ++counts[idx];
    }
    double stat = 0.0;
    for (std::size_t c : counts) {
        const double dev = static_cast<double>(c) - expected;
        stat += dev * dev / expected;
    }

    GofReport rep;
    rep.test_name = "chi-square-uniform";
    rep.n = samples.size();
    rep.alpha = alpha;
    rep.statistic = stat;
    rep.critical_value = chi2_quantile(1.0 - alpha, static_cast<double>(bins - 1));
    rep.passed = rep.statistic < rep.critical_value;
    return rep;
}

namespace {

// Power series for P(a,x), x < a+1.
double gamma_p_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n <= 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("regularized_gamma_p: series did not converge");
}

// Modified Lentz continued fraction for Q(a,x), x >= a+1.
double gamma_q_contfrac(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw std::runtime_error(
        "regularized_gamma_p: continued fraction did not converge");
}

} // namespace

double regularized_gamma_p(double a, double x)
{
    if (!(a > 0.0))
        throw std::invalid_argument("regularized_gamma_p: requires a > 0");
    if (!(x >= 0.0))
        throw std::invalid_argument("regularized_gamma_p: requires x >= 0");
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0)
        return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_quantile(double p, double dof)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("chi2_quantile: p must be in (0, 1)");
    if (!(dof > 0.0))
        throw std::invalid_argument("chi2_quantile: dof must be > 0");
    const auto cdf = [dof](double x) {
        return regularized_gamma_p(0.5 * dof, 0.5 * x);
    };
    double hi = dof + 10.0 * std::sqrt(2.0 * dof) + 10.0;
    while (cdf(hi) < p)
        hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<HistogramBin> density_histogram(const std::vector<double>& samples,
                                            std::size_t bins)
{
    if (samples.empty())
        throw std::invalid_argument("density_histogram: empty sample");
    if (bins < 1)
        throw std::invalid_argument("density_histogram: need bins >= 1");
    const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
    const double mn = *mn_it, mx = *mx_it;
    if (!(mx > mn))
        throw std::invalid_argument(
            "density_histogram: all sample values equal, zero-width range");
    const double width = (mx - mn) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (double x : samples) {
        auto idx = static_cast<std::size_t>((x - mn) / (mx - mn) *
                                            static_cast<double>(bins));
        if (idx >= bins)
            idx = bins - 1;
        ++counts[idx];
    }
    std::vector<HistogramBin> out(bins);
    const double norm = static_cast<double>(samples.size()) * width;
    for (std::size_t i = 0; i < bins; ++i) {
        out[i].center = mn + (static_cast<double>(i) + 0.5) * width;
        out[i].density = static_cast<double>(counts[i]) / norm;
    }
    return out;
}

} // namespace cellscatter
