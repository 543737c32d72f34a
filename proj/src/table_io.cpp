#include "cellscatter/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace cellscatter {

std::string format_double(double value) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
    if (n <= 0 || n >= static_cast<int>(sizeof buf)) {
        throw std::runtime_error("format_double: formatting failed");
    }
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string Cell::to_string() const {
    return kind == Kind::integer ? std::to_string(ivalue) : format_double(rvalue);
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) {
        throw std::invalid_argument("Table: at least one column required");
    }
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("Table: row has " + std::to_string(row.size()) +
                                    " cells, expected " + std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::string out;
    out.reserve(32 + rows_.size() * (columns_.size() * 20));
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (c > 0) out += ',';
        out += columns_[c];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += row[c].to_string();
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    std::string out = "[";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        out += (r == 0) ? "\n" : ",\n";
        out += "  { ";
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c > 0) out += ", ";
            out += '"';
            out += columns_[c];
            out += "\": ";
            out += rows_[r][c].to_string();
        }
        out += " }";
    }
    out += rows_.empty() ? "]\n" : "\n]\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open for writing: " + temp);
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::remove(temp.c_str());
            throw std::runtime_error("write failed: " + temp);
        }
    }
    if (std::rename(temp.c_str(), path.c_str()) != 0) {
        std::remove(temp.c_str());
        throw std::runtime_error("cannot move " + temp + " into place at " + path);
    }
}

} // namespace cellscatter
