#include "emgeo/table.hpp"

#include "emgeo/error.hpp"
#include "emgeo/strings.hpp"

#include <fstream>
#include <sstream>

namespace emgeo {

std::optional<size_t> Table::find_column(std::string_view name) const
{
    for (size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<size_t> Table::resolve_column(std::string_view name) const
{
    if (auto exact = find_column(name); exact.has_value()) {
        return exact;
    }
    const std::string wanted = str::normalize_column_name(name);
    if (wanted.empty()) {
        return std::nullopt;
    }
    for (size_t i = 0; i < columns.size(); ++i) {
        if (str::normalize_column_name(columns[i]) == wanted) {
            return i;
        }
    }
    return std::nullopt;
}

size_t Table::require_column(std::string_view name) const
{
    if (auto idx = resolve_column(name); idx.has_value()) {
        return *idx;
    }
    throw Error(ErrorKind::Config,
                "unknown column '" + std::string(name) + "'; available columns: " + joined_column_names());
}

void Table::add_column(std::string name, std::vector<std::string> values)
{
    if (values.size() != rows.size()) {
        throw Error(ErrorKind::Validation,
                    "column '" + name + "' has " + std::to_string(values.size()) + " values for " +
                        std::to_string(rows.size()) + " rows");
    }
    columns.push_back(std::move(name));
    for (size_t i = 0; i < rows.size(); ++i) {
        rows[i].push_back(std::move(values[i]));
    }
}

std::string Table::joined_column_names() const
{
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += columns[i];
    }
    return out;
}

static Table table_from_rows(std::vector<csv::Row> parsed)
{
    if (parsed.empty()) {
        throw Error(ErrorKind::Format, "CSV input has no header row");
    }
    Table table;
    table.columns = std::move(parsed.front());
    for (size_t r = 1; r < parsed.size(); ++r) {
        auto& row = parsed[r];
        if (row.size() > table.columns.size()) {
            throw Error(ErrorKind::Format,
                        "row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                            " fields, header has " + std::to_string(table.columns.size()));
        }
        row.resize(table.columns.size());
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table Table::from_csv(std::string_view text)
{
    return table_from_rows(csv::parse(text));
}

Table Table::from_csv_file(const std::filesystem::path& path)
{
    return table_from_rows(csv::parse_file(path));
}

void Table::to_csv(std::ostream& out) const
{
    csv::write_row(out, columns);
    for (const auto& row : rows) {
        csv::write_row(out, row);
    }
}

std::string Table::to_csv_string() const
{
    std::ostringstream out;
    to_csv(out);
    return out.str();
}

void Table::save_csv(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write file: " + path.string());
    }
    to_csv(out);
}

} // namespace emgeo
