#pragma once

#include "cellscatter/geometry.hpp"
#include "cellscatter/random.hpp"
#include "cellscatter/sampler.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cellscatter {

/// One sector of a layer and the number of nodes to spread in it.
struct SectorSpec {
    SectorAnnulus region;
    std::size_t node_count = 0;
};

/// One concentric layer: radii shared by all of its sectors.
struct LayerSpec {
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    std::vector<SectorSpec> sectors;
};

/// A cell split into onion-like layers, each split into angular sectors.
/// Layers are listed inside-out; sector angular intervals within a layer
/// must not overlap (gaps are allowed). validate_layout checks all of it.
struct CellLayout {
    std::vector<LayerSpec> layers;

    std::size_t total_sectors() const;
    std::size_t total_nodes() const;

    /// Sector by flat index in layout order (layer-major).
    const SectorSpec& sector(std::size_t flat_index) const;

    /// Maps a flat sector index to (layer index, sector index within layer).
    std::pair<std::size_t, std::size_t> locate(std::size_t flat_index) const;
};

struct LayoutIssue {
    enum class Severity { error, warning };
    Severity severity = Severity::error;
    std::string message;
};

struct LayoutReport {
    std::vector<LayoutIssue> issues;

    /// True when no issue is an error (warnings allowed).
    bool ok() const;
    std::size_t error_count() const;
    std::string to_string() const;
};

/// Structural checks: at least one sector; sector radii match their layer;
/// layers ordered inside-out without radial overlap; sector angles within a
/// layer non-overlapping. Uncovered spans (radial or angular gaps) are
/// warnings, since leaving regions intentionally empty is allowed.
LayoutReport validate_layout(const CellLayout& layout);

/// One placed node of the superposed output, tagged with the flat index of
/// the sector it was generated in.
struct TaggedPoint {
    std::size_t sector_index = 0;
    PlanarPoint position;
    PolarPoint polar;
};

struct PlacementResult {
    std::vector<SampleBatch> per_sector; // one batch per sector, layout order
    std::vector<TaggedPoint> superposed; // concatenation in layout order
    std::uint64_t seed = 0;              // root seed
};

/// Scatters the prescribed node count uniformly in every sector and
/// superposes the batches, in layout order. Sector k draws from
/// stream.substream(k), derived from the stream's root seed (the stream's
/// state is not consumed), so the result is deterministic per seed and
/// independent of any execution order. Throws std::invalid_argument when
/// validate_layout reports errors.
PlacementResult run_csa(const CellLayout& layout, const RandomStream& stream);

/// Density of a uniformly random point of the superposed set:
/// (n_m / N_total) * joint_pdf of the sector containing p, 0 outside all
/// sectors. On a shared boundary the first containing sector in layout
/// order wins. Requires a valid layout with N_total >= 1.
double superposed_density(const CellLayout& layout, const PolarPoint& p);

} // namespace cellscatter
