#include "cellscatter/verify.hpp"

#include "cellscatter/geometry.hpp"
#include "cellscatter/layout_io.hpp"
#include "cellscatter/pathloss.hpp"
#include "cellscatter/random.hpp"
#include "cellscatter/sampler.hpp"
#include "cellscatter/stats.hpp"
#include "cellscatter/table_io.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cellscatter::verify {
namespace {

namespace fs = std::filesystem;
using std::numbers::pi;

std::string fmt(double v, int precision = 6) {
    std::ostringstream out;
    out.precision(precision);
    out << v;
    return out.str();
}

/// Runs body, catching exceptions into a failed result, and enforces the
/// stated wall-clock budget (0 = none).
CheckResult timed_check(const std::string& name, double budget_seconds,
                        const std::function<void(CheckResult&)>& body) {
    CheckResult result;
    result.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(result);
    } catch (const std::exception& e) {
        result.passed = false;
        result.detail = std::string("exception: ") + e.what();
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_seconds > 0.0 && result.seconds > budget_seconds) {
        result.passed = false;
        result.detail += " [exceeded " + fmt(budget_seconds, 3) + " s budget]";
    }
    return result;
}

// --- check 1: goodness of fit of the inverse transform ---------------------

void check_inverse_transform(CheckResult& r, const Options& opts) {
    const SectorAnnulus region(200.0, 1000.0, 0.0, two_pi);
    const std::size_t n = 1'000'000;
    RandomStream stream = RandomStream(opts.seed).substream(100);

    std::vector<double> radii;
    std::vector<double> angles;
    radii.reserve(n);
    angles.reserve(n);
    if (opts.corrupt_radius) {
        // Mutation hook: same transform with the square root dropped.
        const double l1 = region.inner_radius();
        const double l2 = region.outer_radius();
        for (std::size_t i = 0; i < n; ++i) {
            const double u1 = stream.next_uniform();
            const double u2 = stream.next_uniform();
            radii.push_back(u1 * (l2 * l2 - l1 * l1) + l1 * l1);
            angles.push_back(inverse_angle(region, u2));
        }
    } else {
        const SampleBatch batch = sample_batch(region, n, stream);
        for (const auto& p : batch.polar) {
            radii.push_back(p.r);
            angles.push_back(p.theta);
        }
    }

    const GofReport ks = ks_report(
        std::move(radii), [&](double x) { return region.radial_cdf(x); }, 0.01);
    const GofReport chi = chi_square_uniform(angles, 0.0, two_pi, 32, 0.01);

    r.passed = ks.passed && chi.passed;
    r.detail = "KS radii D=" + fmt(ks.statistic, 4) + " vs " + fmt(ks.critical_value, 4) +
               "; chi2 angles X2=" + fmt(chi.statistic, 4) + " vs " +
               fmt(chi.critical_value, 4) + " (n=10^6, 32 bins, alpha=0.01)";
}

// --- check 2: radial CDF round trip -----------------------------------------

void check_round_trip(CheckResult& r, const Options& opts) {
    const RandomStream root(opts.seed);
    const std::size_t grid = 10'000;
    double worst = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
        RandomStream rs = root.substream(200 + j);
        const double l1 = 500.0 * rs.next_uniform();
        const double width = 50.0 + 1450.0 * rs.next_uniform();
        const SectorAnnulus region(l1, l1 + width, 0.0, two_pi);
        for (std::size_t i = 0; i < grid; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(grid - 1);
            const double back = region.radial_cdf(inverse_radius(region, u));
            worst = std::max(worst, std::abs(back - u));
        }
    }
    r.passed = worst <= 1e-12;
    r.detail = "max |F(F^-1(u)) - u| = " + fmt(worst, 3) +
               " vs 1e-12 (10 regions x 10^4 grid values)";
}

// --- checks 3/4: closed form vs quadrature, and normalization ---------------

struct ParamSet {
    const char* label;
    PathLossParams p;
};

std::vector<ParamSet> parameter_sets() {
    auto make = [](double l1, double l2, double r0, double a, double b, double s) {
        PathLossParams p;
        p.region_l1 = l1;
        p.region_l2 = l2;
        p.r0 = r0;
        p.alpha_db = a;
        p.beta_db = b;
        p.sigma_psi_db = s;
        return p;
    };
    // Spans inner radius zero and nonzero, wide and narrow annuli, and
    // light through heavy shadowing.
    return {
        {"A", make(0.0, 1000.0, 1.0, 30.0, 35.0, 8.0)},
        {"B", make(1.0, 100.0, 1.0, 30.0, 35.0, 8.0)},
        {"C", make(200.0, 1000.0, 1.0, 30.0, 35.0, 8.0)},
        {"D", make(50.0, 500.0, 10.0, 40.0, 20.0, 4.0)},
        {"E", make(0.0, 50.0, 1.0, 25.0, 40.0, 12.0)},
        {"F", make(500.0, 2000.0, 100.0, 35.0, 30.0, 6.0)},
    };
}

void check_oracle_agreement(CheckResult& r) {
    double worst = 0.0;
    std::string worst_set = "-";
    for (const auto& set : parameter_sets()) {
        const PathLossParams& p = set.p;
        const double sigma = p.sigma_psi_db;
        const double hi = p.w2() + 4.0 * sigma;
        // With inner radius zero the support is a left tail; cut it where
        // the density is far below any meaningful level.
        const double lo = p.region_l1 > 0.0 ? p.w1() - 4.0 * sigma
                                            : p.w2() - 3.0 * p.beta_db - 4.0 * sigma;
        for (int i = 0; i < 200; ++i) {
            const double l = lo + (hi - lo) * static_cast<double>(i) / 199.0;
            const double diff = std::abs(pl_pdf_closed_form(p, l) - pl_pdf_numeric(p, l));
            if (diff > worst) {
                worst = diff;
                worst_set = set.label;
            }
        }
    }
    r.passed = worst <= 1e-8;
    r.detail = "max |closed - quadrature| = " + fmt(worst, 3) +
               " vs 1e-8 (6 parameter sets x 200-point grids, worst in set " +
               worst_set + ")";
}

void check_normalization(CheckResult& r) {
    double worst = 0.0;
    std::string worst_set = "-";
    for (const auto& set : parameter_sets()) {
        const PathLossParams& p = set.p;
        const double sigma = p.sigma_psi_db;
        const double hi = p.w2() + 8.0 * sigma;
        std::vector<double> cuts;
        if (p.region_l1 > 0.0) {
            cuts = {p.w1() - 8.0 * sigma, p.w1(), p.w2(), hi};
        } else {
            cuts = {p.w2() - 4.5 * p.beta_db - 8.0 * sigma, p.w2(), hi};
        }
        const double mass = integrate_partition(
            [&](double l) { return pl_pdf_closed_form(p, l); }, cuts, 1e-9);
        const double err = std::abs(mass - 1.0);
        if (err > worst) {
            worst = err;
            worst_set = set.label;
        }
    }
    r.passed = worst <= 1e-6;
    r.detail = "max |integral - 1| = " + fmt(worst, 3) +
               " vs 1e-6 (6 parameter sets, worst in set " + worst_set + ")";
}

// --- check 5: Monte Carlo density against the closed form -------------------

void check_monte_carlo(CheckResult& r, const Options& opts) {
    PathLossParams p;
    p.region_l1 = 200.0;
    p.region_l2 = 1000.0;
    p.r0 = 1.0;
    p.alpha_db = 30.0;
    p.beta_db = 35.0;
    p.sigma_psi_db = 8.0;
    const SectorAnnulus region(p.region_l1, p.region_l2, 0.0, two_pi);
    const std::size_t n = 1'000'000;
    const std::size_t bins = 60;

    RandomStream stream = RandomStream(opts.seed).substream(500);
    const auto hist = pl_histogram(p, region, n, bins, stream);
    const double width = hist.size() >= 2 ? hist[1].center - hist[0].center : 1.0;

    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_z = 0.0;
    for (const auto& bin : hist) {
        const double f = pl_pdf_closed_form(p, bin.center);
        if (f <= 1e-3) continue; // tail bins: too few expected counts to score
        ++checked;
        const double prob = std::min(1.0, f * width);
        const double sd = std::sqrt(prob * (1.0 - prob) / static_cast<double>(n)) / width;
        const double dev = std::abs(bin.density - f);
        worst_z = std::max(worst_z, dev / sd);
        if (dev > 4.0 * sd) ++violations;
    }
    r.passed = hist.size() == bins && checked > 0 && violations <= 2;
    r.detail = std::to_string(checked) + "/" + std::to_string(bins) +
               " bins scored (density > 1e-3); " + std::to_string(violations) +
               " outside 4 binomial sd (2 allowed); worst |dev|/sd = " + fmt(worst_z, 3) +
               " (n=10^6)";
}

// --- check 6: superposition exactness ---------------------------------------

void check_superposition(CheckResult& r, const Options& opts) {
    const RandomStream root(opts.seed);

    const std::size_t per_sector = 100'000;
    const CellLayout demo = make_demo_layout(per_sector);
    const RandomStream demo_stream = root.substream(600);
    const PlacementResult placed = run_csa(demo, demo_stream);

    double worst_ks = 0.0; // statistic / critical value, max over sectors
    for (std::size_t s = 0; s < demo.total_sectors(); ++s) {
        const SampleBatch& batch = placed.per_sector[s];
        const SectorSpec& spec = demo.sector(s);
        if (batch.polar.size() != spec.node_count) {
            r.detail = "sector " + std::to_string(s) + " produced " +
                       std::to_string(batch.polar.size()) + " nodes, expected " +
                       std::to_string(spec.node_count);
            return;
        }
        std::vector<double> radii(batch.polar.size());
        for (std::size_t i = 0; i < batch.polar.size(); ++i) {
            if (!spec.region.contains(batch.polar[i])) {
                r.detail = "sector " + std::to_string(s) + " node " + std::to_string(i) +
                           " outside its region";
                return;
            }
            radii[i] = batch.polar[i].r;
        }
        const GofReport ks = ks_report(
            std::move(radii), [&](double x) { return spec.region.radial_cdf(x); }, 0.01);
        worst_ks = std::max(worst_ks, ks.statistic / ks.critical_value);
        if (!ks.passed) {
            r.detail = "sector " + std::to_string(s) + " radial KS D=" +
                       fmt(ks.statistic, 4) + " >= " + fmt(ks.critical_value, 4);
            return;
        }
    }
    if (placed.superposed.size() != demo.total_nodes()) {
        r.detail = "superposed size " + std::to_string(placed.superposed.size()) +
                   " != " + std::to_string(demo.total_nodes());
        return;
    }

    // Two half discs with a 3:1 count split: occupancy by position and the
    // mixture density must both reproduce the ratio.
    CellLayout halves;
    LayerSpec layer;
    layer.inner_radius = 0.0;
    layer.outer_radius = 1000.0;
    layer.sectors.push_back({SectorAnnulus(0.0, 1000.0, 0.0, pi), 75'000});
    layer.sectors.push_back({SectorAnnulus(0.0, 1000.0, pi, two_pi), 25'000});
    halves.layers.push_back(std::move(layer));

    const PlacementResult mixed = run_csa(halves, root.substream(601));
    std::size_t lower = 0;
    for (const auto& tp : mixed.superposed) {
        if (tp.polar.theta < pi) ++lower;
    }
    const std::size_t upper = mixed.superposed.size() - lower;
    const double ratio = upper > 0
                             ? static_cast<double>(lower) / static_cast<double>(upper)
                             : std::numeric_limits<double>::infinity();
    const bool ratio_ok = std::abs(ratio - 3.0) <= 0.05;

    const double dens_lo = superposed_density(halves, PolarPoint{500.0, pi / 2.0});
    const double dens_hi = superposed_density(halves, PolarPoint{500.0, 3.0 * pi / 2.0});
    const double dens_ratio = dens_lo / dens_hi;
    const bool dens_ok = std::abs(dens_ratio - 3.0) <= 1e-12;

    r.passed = ratio_ok && dens_ok;
    r.detail = std::to_string(demo.total_sectors()) +
               " sectors: counts exact, all nodes contained, radial KS worst D/crit = " +
               fmt(worst_ks, 3) + "; half-disc occupancy ratio " + fmt(ratio, 6) +
               " vs 3 +/- 0.05; density ratio |" + fmt(dens_ratio, 15) + " - 3| vs 1e-12";
}

// --- check 7: CLI byte determinism ------------------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void check_cli_determinism(CheckResult& r, const Options& opts) {
    if (opts.cli_binary.empty()) {
        r.detail = "no CLI binary path provided";
        return;
    }

    const fs::path dir =
        fs::temp_directory_path() /
        ("cellscatter-verify-" + std::to_string(static_cast<long>(::getpid())));
    fs::create_directories(dir);
    struct Cleanup {
        fs::path d;
        ~Cleanup() {
            std::error_code ec;
            fs::remove_all(d, ec);
        }
    } cleanup{dir};

    const std::string layout_path = (dir / "layout.json").string();
    write_text_file(layout_path, layout_to_json(make_demo_layout(500)));

    auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
    auto run_twice = [&](const std::string& args, const char* base,
                         const char* ext) -> bool {
        const fs::path out1 = dir / (std::string(base) + "-1." + ext);
        const fs::path out2 = dir / (std::string(base) + "-2." + ext);
        for (const fs::path& out : {out1, out2}) {
            const std::string cmd = quoted(opts.cli_binary) + " " + args + " --out " +
                                    quoted(out.string()) + " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) return false;
        }
        const std::string a = slurp(out1);
        return !a.empty() && a == slurp(out2);
    };

    const std::string seed = std::to_string(opts.seed);
    const bool scatter_ok =
        run_twice("scatter --l1 200 --l2 1000 --a1 0 --a2 " + fmt(two_pi, 17) +
                      " --n 20000 --seed " + seed,
                  "scatter", "csv");
    const bool csa_ok =
        run_twice("csa --layout " + quoted(layout_path) + " --seed " + seed, "csa", "csv");
    const bool pl_ok = run_twice(
        "pl-pdf --l1 200 --l2 1000 --r0 1 --alpha 30 --beta 35 --sigma 8 --points 50"
        " --format json",
        "pl-pdf", "json");

    r.passed = scatter_ok && csa_ok && pl_ok;
    auto word = [](bool ok) { return ok ? "identical" : "MISMATCH"; };
    r.detail = std::string("two runs byte-compared: scatter ") + word(scatter_ok) +
               ", csa " + word(csa_ok) + ", pl-pdf " + word(pl_ok);
}

// --- check 8: mean-square radius --------------------------------------------

void check_mean_square_radius(CheckResult& r, const Options& opts) {
    const RandomStream root(opts.seed);
    struct RegionCase {
        double l1, l2;
        std::uint64_t sub;
    };
    const RegionCase cases[] = {{0.0, 1.0, 800}, {200.0, 1000.0, 801}};
    const std::size_t n = 1'000'000;

    bool all_ok = true;
    std::string parts;
    for (const auto& c : cases) {
        const SectorAnnulus region(c.l1, c.l2, 0.0, two_pi);
        RandomStream rs = root.substream(c.sub);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double radius = sample_node(region, rs).r;
            sum += radius * radius;
        }
        const double mean = sum / static_cast<double>(n);
        const double l1sq = c.l1 * c.l1;
        const double l2sq = c.l2 * c.l2;
        const double mu = 0.5 * (l1sq + l2sq);
        // E[(R^2)^2] = (l2^6 - l1^6) / (3 (l2^2 - l1^2)), from the radial density.
        const double m4 = (std::pow(c.l2, 6) - std::pow(c.l1, 6)) / (3.0 * (l2sq - l1sq));
        const double se = std::sqrt((m4 - mu * mu) / static_cast<double>(n));
        const bool ok = std::abs(mean - mu) <= 3.0 * se;
        all_ok = all_ok && ok;
        if (!parts.empty()) parts += "; ";
        parts += "[" + fmt(c.l1, 6) + "," + fmt(c.l2, 6) + "]: |" + fmt(mean, 8) + " - " +
                 fmt(mu, 8) + "| vs 3 se = " + fmt(3.0 * se, 4);
    }
    r.passed = all_ok;
    r.detail = parts + " (n=10^6 each)";
}

} // namespace

CellLayout make_demo_layout(std::size_t nodes_per_sector) {
    const std::size_t c = nodes_per_sector;
    CellLayout layout;
    {
        LayerSpec layer;
        layer.inner_radius = 0.0;
        layer.outer_radius = 300.0;
        layer.sectors.push_back({SectorAnnulus(0.0, 300.0, 0.0, two_pi), c});
        layout.layers.push_back(std::move(layer));
    }
    {
        LayerSpec layer;
        layer.inner_radius = 300.0;
        layer.outer_radius = 700.0;
        layer.sectors.push_back({SectorAnnulus(300.0, 700.0, 0.0, pi / 2.0), c});
        layer.sectors.push_back({SectorAnnulus(300.0, 700.0, pi / 2.0, pi), c});
        // Deliberate angular gaps on both sides of this sector.
        layer.sectors.push_back(
            {SectorAnnulus(300.0, 700.0, 5.0 * pi / 4.0, 7.0 * pi / 4.0), c});
        layout.layers.push_back(std::move(layer));
    }
    {
        LayerSpec layer;
        layer.inner_radius = 700.0;
        layer.outer_radius = 1000.0;
        layer.sectors.push_back({SectorAnnulus(700.0, 1000.0, 0.0, 2.0 * pi / 3.0), c});
        layer.sectors.push_back(
            {SectorAnnulus(700.0, 1000.0, 2.0 * pi / 3.0, 4.0 * pi / 3.0), c});
        layer.sectors.push_back({SectorAnnulus(700.0, 1000.0, 4.0 * pi / 3.0, two_pi), c});
        layout.layers.push_back(std::move(layer));
    }
    return layout;
}

std::vector<CheckResult> run_all(const Options& opts) {
    std::vector<CheckResult> results;
    results.push_back(timed_check("inverse-transform gof", 5.0, [&](CheckResult& r) {
        check_inverse_transform(r, opts);
    }));
    if (opts.corrupt_radius) {
        // Mutation mode exists only to show the gate above has teeth;
        // the remaining checks are unaffected by the hook.
        return results;
    }
    results.push_back(timed_check("radial round-trip", 1.0, [&](CheckResult& r) {
        check_round_trip(r, opts);
    }));
    results.push_back(timed_check("closed-form vs quadrature", 30.0,
                                  [&](CheckResult& r) { check_oracle_agreement(r); }));
    results.push_back(timed_check("density normalization", 0.0,
                                  [&](CheckResult& r) { check_normalization(r); }));
    results.push_back(timed_check("monte-carlo density", 10.0, [&](CheckResult& r) {
        check_monte_carlo(r, opts);
    }));
    results.push_back(timed_check("superposition exactness", 0.0, [&](CheckResult& r) {
        check_superposition(r, opts);
    }));
    results.push_back(timed_check("cli determinism", 0.0, [&](CheckResult& r) {
        check_cli_determinism(r, opts);
    }));
    results.push_back(timed_check("mean-square radius", 0.0, [&](CheckResult& r) {
        check_mean_square_radius(r, opts);
    }));
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed; });
}

std::string format_report(const std::vector<CheckResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(28)
            << r.name << std::right << std::fixed << std::setprecision(2)
            << std::setw(7) << r.seconds << " s  " << r.detail << '\n';
        out.unsetf(std::ios::fixed);
        out.precision(6);
    }
    return out.str();
}

} // namespace cellscatter::verify
