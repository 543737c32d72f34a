#include "cellscatter/layout_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cellscatter {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
    throw std::runtime_error("layout: " + context + ": " + what);
}

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* name : allowed) {
            if (it.key() == name) {
                known = true;
                break;
            }
        }
        if (!known) fail(context, "unknown field \"" + it.key() + "\"");
    }
}

double get_number(const json& obj, const char* field, const std::string& context) {
    auto it = obj.find(field);
    if (it == obj.end()) fail(context, std::string("missing field \"") + field + "\"");
    if (!it->is_number()) fail(context, std::string("field \"") + field + "\" must be a number");
    return it->get<double>();
}

std::size_t get_count(const json& obj, const char* field, const std::string& context) {
    auto it = obj.find(field);
    if (it == obj.end()) fail(context, std::string("missing field \"") + field + "\"");
    if (!it->is_number_integer())
        fail(context, std::string("field \"") + field + "\" must be an integer");
    if (!it->is_number_unsigned() && it->get<long long>() < 0)
        fail(context, std::string("field \"") + field + "\" must be nonnegative");
    return it->get<std::size_t>();
}

SectorSpec parse_sector(const json& obj, double r_inner, double r_outer,
                        const std::string& context) {
    if (!obj.is_object()) fail(context, "sector entry must be an object");
    reject_unknown_fields(obj, {"theta_lo", "theta_hi", "count"}, context);
    const double lo = get_number(obj, "theta_lo", context);
    const double hi = get_number(obj, "theta_hi", context);
    const std::size_t count = get_count(obj, "count", context);
    try {
        return SectorSpec{SectorAnnulus(r_inner, r_outer, lo, hi), count};
    } catch (const std::invalid_argument& e) {
        fail(context, e.what());
    }
}

LayerSpec parse_layer(const json& obj, std::size_t layer_index) {
    const std::string context = "layer " + std::to_string(layer_index);
    if (!obj.is_object()) fail(context, "layer entry must be an object");
    reject_unknown_fields(obj, {"r_inner", "r_outer", "sectors"}, context);

    LayerSpec layer;
    layer.inner_radius = get_number(obj, "r_inner", context);
    layer.outer_radius = get_number(obj, "r_outer", context);

    auto it = obj.find("sectors");
    if (it == obj.end()) fail(context, "missing field \"sectors\"");
    if (!it->is_array()) fail(context, "field \"sectors\" must be an array");
    layer.sectors.reserve(it->size());
    for (std::size_t si = 0; si < it->size(); ++si) {
        layer.sectors.push_back(parse_sector((*it)[si], layer.inner_radius,
                                             layer.outer_radius,
                                             context + " sector " + std::to_string(si)));
    }
    return layer;
}

} // namespace

CellLayout layout_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("layout: invalid JSON: ") + e.what());
    }

    if (!doc.is_object()) fail("document", "top level must be an object");
    reject_unknown_fields(doc, {"layers"}, "document");

    auto it = doc.find("layers");
    if (it == doc.end()) fail("document", "missing field \"layers\"");
    if (!it->is_array()) fail("document", "field \"layers\" must be an array");

    CellLayout layout;
    layout.layers.reserve(it->size());
    for (std::size_t li = 0; li < it->size(); ++li) {
        layout.layers.push_back(parse_layer((*it)[li], li));
    }
    return layout;
}

CellLayout load_layout_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("layout: cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return layout_from_json(buffer.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string layout_to_json(const CellLayout& layout) {
    json layers = json::array();
    for (const auto& layer : layout.layers) {
        json sectors = json::array();
        for (const auto& spec : layer.sectors) {
            sectors.push_back({{"theta_lo", spec.region.angle_lo()},
                               {"theta_hi", spec.region.angle_hi()},
                               {"count", spec.node_count}});
        }
        layers.push_back({{"r_inner", layer.inner_radius},
                          {"r_outer", layer.outer_radius},
                          {"sectors", std::move(sectors)}});
    }
    json doc{{"layers", std::move(layers)}};
    return doc.dump(2) + "\n";
}

} // namespace cellscatter
