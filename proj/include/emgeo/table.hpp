#pragma once

#include "emgeo/csv.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emgeo {

// A plain in-memory table: ordered column names plus string cells. This is
// the interchange shape between pipeline stages and the CSV files the CLI
// reads and writes. Cells hold raw text; emptiness/NA handling lives with
// the operations that interpret them.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    size_t row_count() const { return rows.size(); }
    size_t column_count() const { return columns.size(); }

    // Exact column name match.
    std::optional<size_t> find_column(std::string_view name) const;

    // Exact match first, then case/dot/space-insensitive.
    std::optional<size_t> resolve_column(std::string_view name) const;

    // resolve_column or a config error naming the available columns.
    size_t require_column(std::string_view name) const;

    // Appends a column; `values` must have one entry per row.
    void add_column(std::string name, std::vector<std::string> values);

    std::string joined_column_names() const;

    static Table from_csv(std::string_view text);
    static Table from_csv_file(const std::filesystem::path& path);
    void to_csv(std::ostream& out) const;
    std::string to_csv_string() const;
    void save_csv(const std::filesystem::path& path) const;
};

} // namespace emgeo
