#include "cellscatter/csa.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cellscatter {

std::size_t CellLayout::total_sectors() const {
    std::size_t n = 0;
    for (const auto& layer : layers) n += layer.sectors.size();
    return n;
}

std::size_t CellLayout::total_nodes() const {
    std::size_t n = 0;
    for (const auto& layer : layers)
        for (const auto& s : layer.sectors) n += s.node_count;
    return n;
}

const SectorSpec& CellLayout::sector(std::size_t flat_index) const {
    auto [li, si] = locate(flat_index);
    return layers[li].sectors[si];
}

std::pair<std::size_t, std::size_t> CellLayout::locate(std::size_t flat_index) const {
    std::size_t base = 0;
    for (std::size_t li = 0; li < layers.size(); ++li) {
        const std::size_t count = layers[li].sectors.size();
        if (flat_index < base + count) return {li, flat_index - base};
        base += count;
    }
    throw std::out_of_range("sector index " + std::to_string(flat_index) +
                            " out of range (layout has " + std::to_string(base) +
                            " sectors)");
}

bool LayoutReport::ok() const { return error_count() == 0; }

std::size_t LayoutReport::error_count() const {
    std::size_t n = 0;
    for (const auto& issue : issues)
        if (issue.severity == LayoutIssue::Severity::error) ++n;
    return n;
}

std::string LayoutReport::to_string() const {
    std::ostringstream out;
    for (const auto& issue : issues) {
        out << (issue.severity == LayoutIssue::Severity::error ? "error: " : "warning: ")
            << issue.message << '\n';
    }
    return out.str();
}

namespace {

void check_layer_sectors(const LayerSpec& layer, std::size_t layer_index,
                         LayoutReport& report) {
    const std::string where = "layer " + std::to_string(layer_index);

    for (std::size_t si = 0; si < layer.sectors.size(); ++si) {
        const SectorAnnulus& region = layer.sectors[si].region;
        if (region.inner_radius() != layer.inner_radius ||
            region.outer_radius() != layer.outer_radius) {
            std::ostringstream msg;
            msg << where << " sector " << si << " radii [" << region.inner_radius()
                << ", " << region.outer_radius() << "] do not match the layer radii ["
                << layer.inner_radius << ", " << layer.outer_radius << "]";
            report.issues.push_back({LayoutIssue::Severity::error, msg.str()});
        }
    }

    // Angular overlap within the layer: sort by lower edge, compare neighbours.
    std::vector<std::size_t> order(layer.sectors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return layer.sectors[a].region.angle_lo() < layer.sectors[b].region.angle_lo();
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        const SectorAnnulus& prev = layer.sectors[order[i - 1]].region;
        const SectorAnnulus& next = layer.sectors[order[i]].region;
        if (next.angle_lo() < prev.angle_hi()) {
            std::ostringstream msg;
            msg << where << ": sectors " << order[i - 1] << " and " << order[i]
                << " overlap in angle ([" << prev.angle_lo() << ", " << prev.angle_hi()
                << ") vs [" << next.angle_lo() << ", " << next.angle_hi() << "))";
            report.issues.push_back({LayoutIssue::Severity::error, msg.str()});
        } else if (next.angle_lo() > prev.angle_hi()) {
            std::ostringstream msg;
            msg << where << ": angular gap between sectors " << order[i - 1] << " and "
                << order[i] << " (" << prev.angle_hi() << " to " << next.angle_lo() << ")";
            report.issues.push_back({LayoutIssue::Severity::warning, msg.str()});
        }
    }
    if (!order.empty()) {
        const SectorAnnulus& first = layer.sectors[order.front()].region;
        const SectorAnnulus& last = layer.sectors[order.back()].region;
        const double covered_lo = first.angle_lo();
        const double covered_hi = last.angle_hi();
        if (covered_lo > 0.0 || covered_hi < two_pi) {
            std::ostringstream msg;
            msg << where << " does not cover the full circle (spans " << covered_lo
                << " to " << covered_hi << ")";
            report.issues.push_back({LayoutIssue::Severity::warning, msg.str()});
        }
    }
}

} // namespace

LayoutReport validate_layout(const CellLayout& layout) {
    LayoutReport report;

    if (layout.total_sectors() == 0) {
        report.issues.push_back(
            {LayoutIssue::Severity::error, "layout contains no sectors"});
        return report;
    }

    for (std::size_t li = 0; li < layout.layers.size(); ++li) {
        const LayerSpec& layer = layout.layers[li];
        if (layer.sectors.empty()) {
            report.issues.push_back(
                {LayoutIssue::Severity::warning,
                 "layer " + std::to_string(li) + " has no sectors"});
        }
        check_layer_sectors(layer, li, report);
        if (li > 0) {
            const LayerSpec& prev = layout.layers[li - 1];
            if (layer.inner_radius < prev.outer_radius) {
                std::ostringstream msg;
                msg << "layer " << li << " inner radius " << layer.inner_radius
                    << " overlaps layer " << li - 1 << " (outer radius "
                    << prev.outer_radius << ")";
                report.issues.push_back({LayoutIssue::Severity::error, msg.str()});
            } else if (layer.inner_radius > prev.outer_radius) {
                std::ostringstream msg;
                msg << "radial gap between layer " << li - 1 << " (outer "
                    << prev.outer_radius << ") and layer " << li << " (inner "
                    << layer.inner_radius << ")";
                report.issues.push_back({LayoutIssue::Severity::warning, msg.str()});
            }
        }
    }
    return report;
}

PlacementResult run_csa(const CellLayout& layout, const RandomStream& stream) {
    const LayoutReport report = validate_layout(layout);
    if (!report.ok()) {
        throw std::invalid_argument("invalid layout:\n" + report.to_string());
    }

    PlacementResult result;
    result.seed = stream.seed();
    result.per_sector.reserve(layout.total_sectors());
    result.superposed.reserve(layout.total_nodes());

    std::size_t flat = 0;
    for (const auto& layer : layout.layers) {
        for (const auto& spec : layer.sectors) {
            RandomStream sector_stream = stream.substream(static_cast<std::uint64_t>(flat));
            SampleBatch batch = sample_batch(spec.region, spec.node_count, sector_stream);
            for (std::size_t i = 0; i < batch.points.size(); ++i) {
                result.superposed.push_back({flat, batch.points[i], batch.polar[i]});
            }
            result.per_sector.push_back(std::move(batch));
            ++flat;
        }
    }
    return result;
}

double superposed_density(const CellLayout& layout, const PolarPoint& p) {
    const LayoutReport report = validate_layout(layout);
    if (!report.ok()) {
        throw std::invalid_argument("invalid layout:\n" + report.to_string());
    }
    const std::size_t total = layout.total_nodes();
    if (total == 0) {
        throw std::invalid_argument("superposed_density requires at least one node");
    }

    for (const auto& layer : layout.layers) {
        for (const auto& spec : layer.sectors) {
            if (spec.region.contains(p)) {
                const double weight =
                    static_cast<double>(spec.node_count) / static_cast<double>(total);
                return weight * spec.region.joint_pdf(p);
            }
        }
    }
    return 0.0;
}

} // namespace cellscatter
