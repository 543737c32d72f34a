#include "cellscatter/csa.hpp"
#include "cellscatter/geometry.hpp"
#include "cellscatter/layout_io.hpp"
#include "cellscatter/pathloss.hpp"
#include "cellscatter/random.hpp"
#include "cellscatter/sampler.hpp"
#include "cellscatter/table_io.hpp"
#include "cellscatter/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace cellscatter;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verification = 2;

std::string render(const Table& table, const std::string& format) {
    return format == "json" ? table.to_json() : table.to_csv();
}

struct ScatterOpts {
    double l1 = 0.0;
    double l2 = 0.0;
    double a1 = 0.0;
    double a2 = two_pi;
    bool degrees = false;
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

int run_scatter(const ScatterOpts& opts, bool a2_given) {
    double a1 = opts.a1;
    double a2 = opts.a2;
    if (opts.degrees) {
        const double to_rad = std::numbers::pi / 180.0;
        a1 *= to_rad;
        if (a2_given) a2 *= to_rad; // otherwise keep the full-circle default
    }
    const SectorAnnulus region(opts.l1, opts.l2, a1, a2);
    RandomStream stream(opts.seed);
    const SampleBatch batch = sample_batch(region, opts.n, stream);

    Table table({"x", "y", "r", "theta"});
    for (std::size_t i = 0; i < batch.points.size(); ++i) {
        table.add_row({Cell::real(batch.points[i].x), Cell::real(batch.points[i].y),
                       Cell::real(batch.polar[i].r), Cell::real(batch.polar[i].theta)});
    }
    write_text_file(opts.out, render(table, opts.format));
    return exit_ok;
}

struct CsaOpts {
    std::string layout_path;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

int run_csa_cmd(const CsaOpts& opts) {
    const CellLayout layout = load_layout_file(opts.layout_path);
    const LayoutReport report = validate_layout(layout);
    if (!report.ok()) {
        std::cerr << opts.layout_path << ": invalid layout\n" << report.to_string();
        return exit_usage;
    }
    for (const auto& issue : report.issues) {
        std::cerr << opts.layout_path << ": warning: " << issue.message << '\n';
    }

    const PlacementResult placed = run_csa(layout, RandomStream(opts.seed));

    Table table({"layer", "sector", "x", "y", "r", "theta"});
    for (std::size_t flat = 0; flat < placed.per_sector.size(); ++flat) {
        const auto [layer, sector] = layout.locate(flat);
        const SampleBatch& batch = placed.per_sector[flat];
        for (std::size_t i = 0; i < batch.points.size(); ++i) {
            table.add_row({Cell::integer(layer), Cell::integer(sector),
                           Cell::real(batch.points[i].x), Cell::real(batch.points[i].y),
                           Cell::real(batch.polar[i].r),
                           Cell::real(batch.polar[i].theta)});
        }
    }
    write_text_file(opts.out, render(table, opts.format));
    return exit_ok;
}

struct PlPdfOpts {
    double l1 = 0.0;
    double l2 = 0.0;
    double r0 = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    double sigma = 0.0;
    double grid_lo = 0.0;
    double grid_hi = 0.0;
    std::size_t points = 200;
    std::string out;
    std::string format = "csv";
};

int run_pl_pdf(const PlPdfOpts& opts, bool lo_given, bool hi_given) {
    PathLossParams params;
    params.region_l1 = opts.l1;
    params.region_l2 = opts.l2;
    params.r0 = opts.r0;
    params.alpha_db = opts.alpha;
    params.beta_db = opts.beta;
    params.sigma_psi_db = opts.sigma;
    params.validate();

    const double sigma = params.sigma_psi_db;
    const double lo = lo_given ? opts.grid_lo
                     : params.region_l1 > 0.0
                         ? params.w1() - 4.0 * sigma
                         : params.w2() - 3.5 * params.beta_db - 4.0 * sigma;
    const double hi = hi_given ? opts.grid_hi : params.w2() + 4.0 * sigma;
    if (!(lo < hi)) {
        std::cerr << "error: grid lower bound " << lo << " must be below upper bound "
                  << hi << '\n';
        return exit_usage;
    }

    const bool no_shadowing = sigma == 0.0;
    if (no_shadowing) {
        std::cerr << "notice: sigma = 0, writing the no-shadowing density in both"
                     " columns\n";
    }

    Table table({"l_dB", "f_closed_form", "f_numeric"});
    double max_diff = 0.0;
    for (std::size_t i = 0; i < opts.points; ++i) {
        const double l =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(opts.points - 1);
        double closed, numeric;
        if (no_shadowing) {
            closed = numeric = pl_pdf_no_shadowing(params, l);
        } else {
            closed = pl_pdf_closed_form(params, l);
            numeric = pl_pdf_numeric(params, l);
        }
        max_diff = std::max(max_diff, std::abs(closed - numeric));
        table.add_row({Cell::real(l), Cell::real(closed), Cell::real(numeric)});
    }
    write_text_file(opts.out, render(table, opts.format));

    if (max_diff > 1e-8) {
        std::cerr << "verification failure: closed form and quadrature disagree by "
                  << max_diff << " (> 1e-8)\n";
        return exit_verification;
    }
    return exit_ok;
}

std::string self_path(const char* argv0) {
    std::error_code ec;
    const auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) return p.string();
    return argv0 != nullptr ? std::string(argv0) : std::string();
}

int run_verify(std::uint64_t seed, bool corrupt_radius, const char* argv0) {
    verify::Options options;
    options.seed = seed;
    options.cli_binary = self_path(argv0);
    options.corrupt_radius = corrupt_radius;

    const auto results = verify::run_all(options);
    std::cout << verify::format_report(results);
    if (verify::all_passed(results)) {
        std::cout << "all " << results.size() << " checks passed (seed " << seed << ")\n";
        return exit_ok;
    }
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << failed << " of " << results.size() << " checks failed (seed " << seed
              << ")\n";
    return exit_verification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform node scattering in circular-sector annuli, heterogeneous"
                 " cell layouts by sector superposition, and path-loss densities"
                 " under lognormal shadowing."};
    app.require_subcommand(1);

    ScatterOpts scatter;
    CLI::App* scatter_cmd =
        app.add_subcommand("scatter", "Scatter n uniform nodes in one region");
    scatter_cmd->add_option("--l1", scatter.l1, "Inner radius (m)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    scatter_cmd->add_option("--l2", scatter.l2, "Outer radius (m)")->required();
    scatter_cmd->add_option("--a1", scatter.a1, "Lower angle (radians)")
        ->capture_default_str();
    CLI::Option* a2_opt = scatter_cmd->add_option(
        "--a2", scatter.a2, "Upper angle (radians; default full circle)");
    scatter_cmd->add_flag("--degrees", scatter.degrees,
                          "Interpret --a1/--a2 in degrees");
    scatter_cmd->add_option("--n", scatter.n, "Number of nodes")->required();
    scatter_cmd->add_option("--seed", scatter.seed, "Random seed")
        ->capture_default_str();
    scatter_cmd->add_option("--out", scatter.out, "Output file path")->required();
    scatter_cmd->add_option("--format", scatter.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CsaOpts csa;
    CLI::App* csa_cmd = app.add_subcommand(
        "csa", "Place nodes for a layered cell layout and superpose the sectors");
    csa_cmd->add_option("--layout", csa.layout_path, "Layout JSON file")->required();
    csa_cmd->add_option("--seed", csa.seed, "Random seed")->capture_default_str();
    csa_cmd->add_option("--out", csa.out, "Output file path")->required();
    csa_cmd->add_option("--format", csa.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    PlPdfOpts plpdf;
    CLI::App* plpdf_cmd = app.add_subcommand(
        "pl-pdf", "Tabulate the path-loss density (closed form and quadrature)");
    plpdf_cmd->add_option("--l1", plpdf.l1, "Inner radius (m)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    plpdf_cmd->add_option("--l2", plpdf.l2, "Outer radius (m)")->required();
    plpdf_cmd->add_option("--r0", plpdf.r0, "Close-in reference distance (m)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    plpdf_cmd->add_option("--alpha", plpdf.alpha, "Intercept (dB)")->required();
    plpdf_cmd->add_option("--beta", plpdf.beta, "Slope (dB/decade)")
        ->check(CLI::PositiveNumber)
        ->required();
    plpdf_cmd->add_option("--sigma", plpdf.sigma, "Shadowing std dev (dB)")
        ->check(CLI::NonNegativeNumber)
        ->required();
    CLI::Option* lo_opt =
        plpdf_cmd->add_option("--grid-lo", plpdf.grid_lo, "Grid lower bound (dB)");
    CLI::Option* hi_opt =
        plpdf_cmd->add_option("--grid-hi", plpdf.grid_hi, "Grid upper bound (dB)");
    plpdf_cmd->add_option("--points", plpdf.points, "Grid points (>= 2)")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    plpdf_cmd->add_option("--out", plpdf.out, "Output file path")->required();
    plpdf_cmd->add_option("--format", plpdf.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    std::uint64_t verify_seed = 42;
    bool corrupt_radius = false;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run the full verification suite");
    verify_cmd->add_option("--seed", verify_seed, "Random seed")
        ->capture_default_str();
    verify_cmd->add_flag("--corrupt-radius", corrupt_radius)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (scatter_cmd->parsed()) return run_scatter(scatter, a2_opt->count() > 0);
        if (csa_cmd->parsed()) return run_csa_cmd(csa);
        if (plpdf_cmd->parsed())
            return run_pl_pdf(plpdf, lo_opt->count() > 0, hi_opt->count() > 0);
        if (verify_cmd->parsed()) return run_verify(verify_seed, corrupt_radius, argv[0]);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage; // unreachable with require_subcommand(1)
}
