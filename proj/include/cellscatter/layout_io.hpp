#pragma once

#include "cellscatter/csa.hpp"

#include <string>

namespace cellscatter {

/// Parses a layout from JSON text. Expected shape:
///
///   {
///     "layers": [
///       {
///         "r_inner": 0.0,
///         "r_outer": 300.0,
///         "sectors": [
///           { "theta_lo": 0.0, "theta_hi": 6.283185307179586, "count": 300 }
///         ]
///       }
///     ]
///   }
///
/// Angles are radians, radii meters, counts nonnegative integers. Unknown
/// fields anywhere in the document are rejected, as are missing fields and
/// wrong types. Throws std::runtime_error with a message naming the
/// offending layer/sector; the error covers syntax only — call
/// validate_layout for the geometric rules.
CellLayout layout_from_json(const std::string& text);

/// Reads and parses a layout file. Throws std::runtime_error when the file
/// cannot be opened, prefixing the path to parse errors.
CellLayout load_layout_file(const std::string& path);

/// Serializes the layout back to the schema above. A parse → serialize
/// round trip reproduces an equivalent document.
std::string layout_to_json(const CellLayout& layout);

} // namespace cellscatter
