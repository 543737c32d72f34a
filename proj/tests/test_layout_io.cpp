#include "cellscatter/layout_io.hpp"

#include "cellscatter/verify.hpp"

#include <doctest.h>

#include <stdexcept>
#include <string>

using namespace cellscatter;

TEST_CASE("the shipped demo layout matches the built-in geometry") {
    const CellLayout from_file = load_layout_file(CELLSCATTER_DEMO_LAYOUT);
    const CellLayout reference = verify::make_demo_layout(1);

    REQUIRE(from_file.layers.size() == reference.layers.size());
    for (std::size_t li = 0; li < from_file.layers.size(); ++li) {
        const LayerSpec& a = from_file.layers[li];
        const LayerSpec& b = reference.layers[li];
        CHECK(a.inner_radius == b.inner_radius);
        CHECK(a.outer_radius == b.outer_radius);
        REQUIRE(a.sectors.size() == b.sectors.size());
        for (std::size_t si = 0; si < a.sectors.size(); ++si) {
            CHECK(a.sectors[si].region == b.sectors[si].region);
        }
    }

    // file-specific node counts
    CHECK(from_file.total_nodes() == 1750);
    CHECK(from_file.sector(0).node_count == 300);
    CHECK(from_file.sector(1).node_count == 450);
    CHECK(from_file.sector(2).node_count == 150);
    CHECK(from_file.sector(3).node_count == 250);
    CHECK(from_file.sector(4).node_count == 200);
    CHECK(from_file.sector(5).node_count == 50);
    CHECK(from_file.sector(6).node_count == 350);

    const LayoutReport report = validate_layout(from_file);
    CHECK(report.ok());
    CHECK(report.issues.size() == 2); // the two deliberate angular gaps
}

TEST_CASE("serialization round trip preserves the layout") {
    const CellLayout original = verify::make_demo_layout(123);
    const CellLayout copy = layout_from_json(layout_to_json(original));
    REQUIRE(copy.layers.size() == original.layers.size());
    for (std::size_t li = 0; li < copy.layers.size(); ++li) {
        CHECK(copy.layers[li].inner_radius == original.layers[li].inner_radius);
        CHECK(copy.layers[li].outer_radius == original.layers[li].outer_radius);
        REQUIRE(copy.layers[li].sectors.size() ==
                original.layers[li].sectors.size());
        for (std::size_t si = 0; si < copy.layers[li].sectors.size(); ++si) {
            CHECK(copy.layers[li].sectors[si].region ==
                  original.layers[li].sectors[si].region);
            CHECK(copy.layers[li].sectors[si].node_count == 123);
        }
    }
}

TEST_CASE("unknown fields are rejected at every level") {
    CHECK_THROWS_WITH_AS(
        layout_from_json(R"({"layers": [], "extra": 1})"),
        doctest::Contains("unknown field \"extra\""), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        layout_from_json(
            R"({"layers": [{"r_inner": 0, "r_outer": 1, "sectors": [], "color": "red"}]})"),
        doctest::Contains("unknown field \"color\""), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        layout_from_json(
            R"({"layers": [{"r_inner": 0, "r_outer": 1,
                "sectors": [{"theta_lo": 0, "theta_hi": 1, "count": 5, "label": "x"}]}]})"),
        doctest::Contains("unknown field \"label\""), std::runtime_error);
}

TEST_CASE("missing and malformed fields are rejected with context") {
    CHECK_THROWS_WITH_AS(layout_from_json(R"({})"),
                         doctest::Contains("missing field \"layers\""),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(
        layout_from_json(R"({"layers": [{"r_outer": 1, "sectors": []}]})"),
        doctest::Contains("layer 0"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        layout_from_json(
            R"({"layers": [{"r_inner": 0, "r_outer": 1,
                "sectors": [{"theta_lo": 0, "theta_hi": 1}]}]})"),
        doctest::Contains("missing field \"count\""), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        layout_from_json(
            R"({"layers": [{"r_inner": "zero", "r_outer": 1, "sectors": []}]})"),
        doctest::Contains("must be a number"), std::runtime_error);
    CHECK_THROWS_AS(layout_from_json(R"({"layers": 7})"), std::runtime_error);
    CHECK_THROWS_AS(layout_from_json(R"([1, 2, 3])"), std::runtime_error);
}

TEST_CASE("counts must be nonnegative integers") {
    const std::string negative =
        R"({"layers": [{"r_inner": 0, "r_outer": 1,
            "sectors": [{"theta_lo": 0, "theta_hi": 1, "count": -3}]}]})";
    CHECK_THROWS_WITH_AS(layout_from_json(negative),
                         doctest::Contains("nonnegative"), std::runtime_error);
    const std::string fractional =
        R"({"layers": [{"r_inner": 0, "r_outer": 1,
            "sectors": [{"theta_lo": 0, "theta_hi": 1, "count": 2.5}]}]})";
    CHECK_THROWS_WITH_AS(layout_from_json(fractional),
                         doctest::Contains("integer"), std::runtime_error);
}

TEST_CASE("geometry violations carry the sector context") {
    const std::string bad_angles =
        R"({"layers": [{"r_inner": 0, "r_outer": 1,
            "sectors": [{"theta_lo": 2.0, "theta_hi": 1.0, "count": 5}]}]})";
    CHECK_THROWS_WITH_AS(layout_from_json(bad_angles),
                         doctest::Contains("layer 0 sector 0"),
                         std::runtime_error);
}

TEST_CASE("syntactically invalid JSON is reported as such") {
    CHECK_THROWS_WITH_AS(layout_from_json("{ not json"),
                         doctest::Contains("invalid JSON"), std::runtime_error);
}

TEST_CASE("missing files are reported with the path") {
    CHECK_THROWS_WITH_AS(load_layout_file("/no/such/file.json"),
                         doctest::Contains("/no/such/file.json"),
                         std::runtime_error);
}
