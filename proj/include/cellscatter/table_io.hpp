#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cellscatter {

/// Shortest text that round-trips the value exactly (17 significant digits,
/// "." decimal separator, no locale influence).
std::string format_double(double value);

/// One table cell; integers render without a decimal point.
struct Cell {
    enum class Kind { integer, real };
    Kind kind = Kind::real;
    std::uint64_t ivalue = 0;
    double rvalue = 0.0;

    static Cell integer(std::uint64_t v) { return {Kind::integer, v, 0.0}; }
    static Cell real(double v) { return {Kind::real, 0, v}; }

    std::string to_string() const;
};

/// Column-named rows rendered as CSV or as a JSON array of objects.
/// Both renderings are byte-deterministic for identical input and use LF
/// line endings. Column names must be plain identifiers (they are emitted
/// into JSON without escaping).
class Table {
public:
    explicit Table(std::vector<std::string> columns);

    /// Throws std::invalid_argument when the arity does not match.
    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t row_count() const { return rows_.size(); }

    std::string to_csv() const;
    std::string to_json() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Writes content to path atomically: the bytes go to a sibling temp file
/// which is renamed over the target, so a crash or error never leaves a
/// partial file at path. Throws std::runtime_error on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

} // namespace cellscatter
