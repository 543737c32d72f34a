#include "cellscatter/stats.hpp"

#include "cellscatter/random.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace cellscatter;

TEST_CASE("empirical cdf is a right-continuous step function") {
    const EmpiricalCdf cdf({3.0, 1.0, 2.0});
    CHECK(cdf(0.5) == 0.0);
    CHECK(cdf(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(cdf(1.5) == doctest::Approx(1.0 / 3.0));
    CHECK(cdf(2.5) == doctest::Approx(2.0 / 3.0));
    CHECK(cdf(3.0) == 1.0);
    CHECK(cdf(99.0) == 1.0);
    CHECK_THROWS_AS(EmpiricalCdf({}), std::invalid_argument);
}

TEST_CASE("KS statistic of a single median sample is one half") {
    const double d = ks_statistic({0.5}, [](double x) { return x; });
    CHECK(d == doctest::Approx(0.5));
}

TEST_CASE("KS statistic at exact quantiles is 1/(n+1)") {
    const std::size_t n = 99;
    std::vector<double> samples;
    for (std::size_t i = 1; i <= n; ++i) {
        samples.push_back(static_cast<double>(i) / (n + 1));
    }
    const double d = ks_statistic(samples, [](double x) { return x; });
    CHECK(d == doctest::Approx(1.0 / (n + 1)).epsilon(1e-12));
}

TEST_CASE("KS rejects a shifted distribution at large n") {
    RandomStream stream(17);
    const std::size_t n = 100'000;
    std::vector<double> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        samples.push_back(0.99 * stream.next_uniform() + 0.01); // shifted uniform
    }
    const double d = ks_statistic(samples, [](double x) {
        return std::min(1.0, std::max(0.0, x));
    });
    CHECK(d > ks_critical_value(n, 0.01));
}

TEST_CASE("KS accepts its own distribution at large n") {
    RandomStream stream(18);
    const std::size_t n = 100'000;
    std::vector<double> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) samples.push_back(stream.next_uniform());
    const GofReport report = ks_report(
        samples, [](double x) { return std::min(1.0, std::max(0.0, x)); }, 0.01);
    CHECK(report.passed);
    CHECK(report.n == n);
    CHECK(report.critical_value == doctest::Approx(1.63 / std::sqrt(double(n))));
}

TEST_CASE("KS critical values follow the asymptotic table") {
    CHECK(ks_critical_value(100, 0.01) == doctest::Approx(0.163));
    CHECK(ks_critical_value(100, 0.05) == doctest::Approx(0.136));
    CHECK(ks_critical_value(100, 0.10) == doctest::Approx(0.122));
    CHECK_THROWS_AS(ks_critical_value(100, 0.20), std::invalid_argument);
    CHECK_THROWS_AS(ks_critical_value(0, 0.01), std::invalid_argument);
}

TEST_CASE("KS statistic rejects empty input") {
    CHECK_THROWS_AS(ks_statistic({}, [](double) { return 0.5; }),
                    std::invalid_argument);
}

TEST_CASE("chi-square statistic is zero for perfectly balanced samples") {
    std::vector<double> samples;
    const std::size_t n = 3200;
    for (std::size_t i = 0; i < n; ++i) {
        samples.push_back((static_cast<double>(i) + 0.5) / n);
    }
    const GofReport report = chi_square_uniform(samples, 0.0, 1.0, 32);
    CHECK(report.statistic == doctest::Approx(0.0));
    CHECK(report.passed);
}

TEST_CASE("chi-square of a point mass is n times (bins - 1)") {
    std::vector<double> samples(30, 0.01);
    const GofReport report = chi_square_uniform(samples, 0.0, 1.0, 6);
    CHECK(report.statistic == doctest::Approx(30.0 * 5.0));
    CHECK_FALSE(report.passed);
    // 0.99 quantile of chi-square with 5 dof
    CHECK(report.critical_value == doctest::Approx(15.08627246938899).epsilon(1e-9));
}

TEST_CASE("chi-square passes on generator output") {
    RandomStream stream(23);
    std::vector<double> samples;
    const std::size_t n = 100'000;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) samples.push_back(stream.next_uniform());
    const GofReport report = chi_square_uniform(samples, 0.0, 1.0, 32);
    CHECK(report.passed);
    CHECK(report.critical_value == doctest::Approx(52.19139483319193).epsilon(1e-9));
}

TEST_CASE("chi-square precondition violations are rejected") {
    std::vector<double> ok(100, 0.5);
    CHECK_THROWS_AS(chi_square_uniform(ok, 0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_uniform(ok, 0.6, 1.0, 2), std::invalid_argument);
    std::vector<double> tiny(5, 0.5);
    CHECK_THROWS_AS(chi_square_uniform(tiny, 0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_uniform({}, 0.0, 1.0, 2), std::invalid_argument);
}

TEST_CASE("regularized gamma agrees with closed-form identities") {
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.0}) {
        CHECK(regularized_gamma_p(0.5, x) ==
              doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
        CHECK(regularized_gamma_p(1.0, x) ==
              doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    }
    CHECK(regularized_gamma_p(3.0, 0.0) == 0.0);
    CHECK(regularized_gamma_p(2.0, 1000.0) == doctest::Approx(1.0));
}

TEST_CASE("chi-square quantiles match reference values") {
    CHECK(chi2_quantile(0.99, 31) == doctest::Approx(52.19139483319193).epsilon(1e-10));
    CHECK(chi2_quantile(0.99, 5) == doctest::Approx(15.08627246938899).epsilon(1e-10));
    CHECK(chi2_quantile(0.99, 1) == doctest::Approx(6.6348966010212145).epsilon(1e-10));
}

TEST_CASE("chi-square quantile is self-consistent under quadrature") {
    const double dof = 5.0;
    const double q = chi2_quantile(0.99, dof);
    const double a = dof / 2.0;
    const double log_norm = a * std::log(2.0) + std::lgamma(a);
    const double mass = integrate(
        [&](double x) {
            return std::exp((a - 1.0) * std::log(x) - x / 2.0 - log_norm);
        },
        1e-12, q, 1e-10);
    CHECK(mass == doctest::Approx(0.99).epsilon(1e-7));
}

TEST_CASE("density histogram basics") {
    const std::vector<double> samples{0.0, 1.0, 2.0, 4.0};
    const auto bins = density_histogram(samples, 4);
    REQUIRE(bins.size() == 4);
    double mass = 0.0;
    const double width = 1.0; // range 4 over 4 bins
    for (const auto& bin : bins) mass += bin.density * width;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

    const auto single = density_histogram(samples, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].density == doctest::Approx(1.0 / 4.0));
    CHECK(single[0].center == doctest::Approx(2.0));

    CHECK_THROWS_AS(density_histogram({}, 3), std::invalid_argument);
    CHECK_THROWS_AS(density_histogram({1.0, 1.0}, 2), std::invalid_argument);
}

TEST_CASE("density histogram of uniforms is flat within one percent") {
    RandomStream stream(29);
    std::vector<double> samples;
    const std::size_t n = 1'000'000;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) samples.push_back(stream.next_uniform());
    const auto bins = density_histogram(samples, 10);
    for (const auto& bin : bins) {
        CHECK(std::abs(bin.density - 1.0) < 0.01);
    }
}

TEST_CASE("quadrature reproduces simple integrals") {
    CHECK(integrate([](double r) { return 2.0 * r; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return x * x * x; }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(0.25).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0,
                    std::numbers::pi, 1e-10) == doctest::Approx(2.0).epsilon(1e-10));
    const double sigma = 3.0;
    const double mass = integrate(
        [&](double x) {
            return std::exp(-x * x / (2.0 * sigma * sigma)) /
                   (sigma * std::sqrt(2.0 * std::numbers::pi));
        },
        -8.0 * sigma, 8.0 * sigma, 1e-10);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quadrature rejects bad intervals and reports non-convergence") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0),
                    std::invalid_argument);
    // Non-finite integrand values are reported, not silently absorbed.
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                              1.0, 1e-10),
                    std::runtime_error);
    // A jump at an irrational point defeats interval halving at this
    // tolerance; the failure must be explicit.
    CHECK_THROWS_AS(integrate([](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0; },
                              0.0, 1.0, 1e-15),
                    std::runtime_error);
}

TEST_CASE("partitioned quadrature matches a single interval") {
    auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    const double whole = integrate(f, 0.0, 5.0, 1e-11);
    const double split = integrate_partition(f, {0.0, 1.0, 2.5, 4.0, 5.0}, 1e-11);
    CHECK(split == doctest::Approx(whole).epsilon(1e-9));
}
