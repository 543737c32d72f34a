#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cellscatter {

/// Right-continuous empirical distribution function of a sample.
class EmpiricalCdf {
public:
    /// Takes ownership of the sample and sorts it. Throws on empty input.
    explicit EmpiricalCdf(std::vector<double> values);

    /// Fraction of sample values <= x.
    double operator()(double x) const;

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& sorted_values() const { return values_; }

private:
    std::vector<double> values_;
};

/// Outcome of a goodness-of-fit test at a fixed significance level.
struct GofReport {
    std::string test_name;
    double statistic = 0.0;
    double critical_value = 0.0;
    double alpha = 0.0;
    std::size_t n = 0;
    bool passed = false; // statistic < critical_value
};

/// Two-sided Kolmogorov-Smirnov statistic of a sample against a reference
/// CDF: D_n = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n) over the sorted
/// sample. Throws on empty input.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

/// Asymptotic KS critical value c(alpha)/sqrt(n), valid for n >= 50.
/// Supported alphas: 0.10, 0.05, 0.01.
double ks_critical_value(std::size_t n, double alpha);

GofReport ks_report(std::vector<double> samples,
                    const std::function<double(double)>& cdf, double alpha);

/// Pearson chi-square test of a sample against the uniform distribution on
/// [lo, hi], using equal-width bins. Requires every sample in [lo, hi],
/// bins >= 2, and expected count per bin >= 5. The critical value is the
/// (1 - alpha) quantile of chi-square with bins-1 degrees of freedom,
/// computed numerically.
GofReport chi_square_uniform(const std::vector<double>& samples,
                             double lo, double hi, std::size_t bins,
                             double alpha = 0.01);

/// Regularized lower incomplete gamma P(a, x), by power series for
/// x < a + 1 and a modified-Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);

/// Quantile of the chi-square distribution with dof degrees of freedom,
/// solved by bisection on P(dof/2, x/2) = p.
double chi2_quantile(double p, double dof);

/// One bin of a density-normalized histogram.
struct HistogramBin {
    double center = 0.0;
    double density = 0.0;
};

/// Equal-width density histogram over [min, max] of the sample;
/// density = count / (n * width), so total mass is 1. Throws on an empty
/// sample or a zero-width range.
std::vector<HistogramBin> density_histogram(const std::vector<double>& samples,
                                            std::size_t bins);

namespace detail {

struct SimpsonState {
    double abs_tol;
    int max_depth;
};

template <typename F>
double adaptive_simpson(const F& f, const SimpsonState& st,
                        double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    if (!(lm > a && rm > m && lm < m && rm < b))
        throw std::runtime_error(
            "integrate: interval collapsed to machine precision without "
            "meeting the tolerance");
    const double flm = f(lm);
    const double frm = f(rm);
    if (!(std::isfinite(flm) && std::isfinite(frm)))
        throw std::runtime_error("integrate: non-finite integrand value");
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth >= st.max_depth)
        throw std::runtime_error(
            "integrate: no convergence after " + std::to_string(st.max_depth) +
            " interval halvings (abs_tol too tight for this integrand?)");
    return adaptive_simpson(f, st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson(f, st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [lo, hi] with estimated absolute
/// error <= abs_tol. Throws if the subdivision limit (60 halvings) is reached
/// or the integrand is non-finite.
template <typename F>
double integrate(F&& f, double lo, double hi, double abs_tol)
{
    if (!(lo < hi))
        throw std::invalid_argument("integrate: requires lo < hi");
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("integrate: requires abs_tol > 0");
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo);
    const double fm = f(m);
    const double fb = f(hi);
    if (!(std::isfinite(fa) && std::isfinite(fm) && std::isfinite(fb)))
        throw std::runtime_error("integrate: non-finite integrand value");
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    const detail::SimpsonState st{abs_tol, 60};
    return detail::adaptive_simpson(f, st, lo, hi, fa, fm, fb, whole, abs_tol, 0);
}

/// Piecewise variant: integrates between consecutive points of a partition
/// lo = x0 < x1 < ... < xk = hi, splitting abs_tol across panels in
/// proportion to width. Useful when the integrand has a narrow active
/// region inside a wide interval.
template <typename F>
double integrate_partition(F&& f, const std::vector<double>& partition,
                           double abs_tol)
{
    if (partition.size() < 2)
        throw std::invalid_argument("integrate_partition: need >= 2 points");
    const double total = partition.back() - partition.front();
    if (!(total > 0.0))
        throw std::invalid_argument("integrate_partition: points must increase");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        const double a = partition[i];
        const double b = partition[i + 1];
        if (!(a < b))
            throw std::invalid_argument("integrate_partition: points must increase");
        sum += integrate(f, a, b, abs_tol * ((b - a) / total));
    }
    return sum;
}

} // namespace cellscatter
